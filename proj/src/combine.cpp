#include "ssc/combine.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

CombineSequence::CombineSequence(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 1) throw InputError("sequence entries are 1-based block indices");
  }
}

std::vector<int> CombineSequence::counts(int block_count) const {
  std::vector<int> out(block_count, 0);
  for (int e : entries_) {
    if (e > block_count) {
      throw InputError("sequence names block " + std::to_string(e) + " but only " +
                       std::to_string(block_count) + " blocks exist");
    }
    ++out[e - 1];
  }
  return out;
}

void CombineSequence::require_counts(const std::vector<int>& repeats) const {
  const auto have = counts(static_cast<int>(repeats.size()));
  for (std::size_t i = 0; i < repeats.size(); ++i) {
    if (have[i] != repeats[i]) {
      throw InputError("block " + std::to_string(i + 1) + " occurs " + std::to_string(have[i]) +
                       " times in the sequence, expected " + std::to_string(repeats[i]));
    }
  }
}

void CombineSequence::require_no_adjacent_repeats() const {
  for (std::size_t k = 1; k < entries_.size(); ++k) {
    if (entries_[k] == entries_[k - 1]) {
      throw InfeasibleSequence("block " + std::to_string(entries_[k]) + " repeated at positions " +
                               std::to_string(k) + " and " + std::to_string(k + 1));
    }
  }
}

std::map<Node, int> remap_time(const CombineSequence& seq, int which, const TimeFunction& local) {
  const int q = local.node_count() - local.chain_count();
  const auto occurrences = std::count(seq.entries().begin(), seq.entries().end(), which);
  if (occurrences != q) {
    throw InputError("block " + std::to_string(which) + " occurs " + std::to_string(occurrences) +
                     " times in the sequence, expected n - m = " + std::to_string(q));
  }
  std::map<int, Node> by_time;
  std::map<Node, int> out;
  for (const auto& [v, t] : local.times()) {
    if (t == 1) {
      out[v] = 1;
    } else {
      by_time[t] = v;
    }
  }
  int j = 0;
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    if (seq.at(k) != which) continue;
    ++j;
    if (auto it = by_time.find(j + 1); it != by_time.end()) out[it->second] = static_cast<int>(k) + 1;
  }
  return out;
}

int CombinedNetwork::block_of(Node v) const {
  if (v < 1 || v > graph.node_count()) throw InputError("node " + std::to_string(v) + " out of range");
  auto it = std::upper_bound(offsets.begin(), offsets.end(), v - 1);
  return static_cast<int>(it - offsets.begin());
}

std::vector<int> block_offsets(const std::vector<Block>& blocks) {
  std::vector<int> out;
  int total = 0;
  for (const Block& b : blocks) {
    out.push_back(total);
    total += b.graph.node_count();
  }
  return out;
}

namespace {

void require_blocks(const std::vector<Block>& blocks, const CombineSequence& seq) {
  if (blocks.empty()) throw InputError("at least one block is required");
  std::vector<int> repeats;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    const auto problems = validate_time_function(b.tf);
    if (!problems.empty()) {
      throw InputError("block " + std::to_string(i + 1) + " has an invalid time function: " + problems.front());
    }
    if (!is_ct_constructed(b.graph, b.tf)) {
      throw InputError("block " + std::to_string(i + 1) + " is not (C,T)-constructed under its time function");
    }
    repeats.push_back(b.tf.node_count() - b.tf.chain_count());
  }
  seq.require_counts(repeats);
}

// Merged chains and times, plus the disjoint union of blocks.
CombinedNetwork merge(const std::vector<Block>& blocks, const CombineSequence& seq) {
  require_blocks(blocks, seq);
  CombinedNetwork out;
  out.offsets = block_offsets(blocks);
  std::vector<Chain> chains;
  std::map<Node, int> times;
  EdgeSet edges;
  int n = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int off = out.offsets[i];
    const Block& b = blocks[i];
    n += b.graph.node_count();
    for (const Chain& c : b.tf.chains().chains()) {
      std::vector<Node> nodes;
      for (Node v : c.nodes()) nodes.push_back(v + off);
      chains.emplace_back(std::move(nodes));
    }
    for (const auto& [v, t] : remap_time(seq, static_cast<int>(i) + 1, b.tf)) times[v + off] = t;
    for (const Edge& e : b.graph.edges()) edges.insert({e.from + off, e.to + off});
  }
  out.tf = TimeFunction(ChainSet(std::move(chains)), std::move(times));
  out.graph = DiGraph(n, std::move(edges));
  return out;
}

}  // namespace

CombinedNetwork combine_networks(const std::vector<Block>& blocks, const CombineSequence& seq,
                                 const EdgeSet& inter) {
  CombinedNetwork out = merge(blocks, seq);
  const int n = out.graph.node_count();
  for (const Edge& e : inter) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      throw InputError("inter edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                       ") has an endpoint outside [1," + std::to_string(n) + "]");
    }
    if (out.block_of(e.from) == out.block_of(e.to)) {
      throw InputError("inter edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                       ") lies inside block " + std::to_string(out.block_of(e.from)));
    }
    const int tmax = out.tf.tmax(e.from);
    const int t = out.tf.time(e.to);
    if (tmax < t) throw RejectedEdge(e, tmax, t);
  }
  out.graph = add_edges(out.graph, inter);
  out.inter_edges = inter;
  return out;
}

EdgeSetReport max_inter_edges(const std::vector<Block>& blocks, const CombineSequence& seq) {
  const CombinedNetwork merged = merge(blocks, seq);
  EdgeSetReport report;
  report.kind = EdgeSetKind::InterNetwork;
  const int n = merged.graph.node_count();
  for (Node u = 1; u <= n; ++u) {
    const int tmax = merged.tf.tmax(u);
    for (Node v = 1; v <= n; ++v) {
      if (merged.block_of(u) != merged.block_of(v) && tmax >= merged.tf.time(v)) report.edges.insert({u, v});
    }
  }
  report.cardinality = static_cast<std::int64_t>(report.edges.size());
  report.bound = perfect_edge_count(n, merged.tf.chain_count());
  for (const Block& b : blocks) report.bound -= perfect_edge_count(b.tf.node_count(), b.tf.chain_count());
  report.witness = merged.tf;
  return report;
}

namespace {

// Whether the remaining counts can still be laid out with no two equal
// blocks adjacent, given that block `last` was placed just before.
bool arrangeable(const std::vector<int>& left, int last) {
  const int total = std::accumulate(left.begin(), left.end(), 0);
  for (std::size_t i = 0; i < left.size(); ++i) {
    const int others = total - left[i];
    const int slack = static_cast<int>(i) + 1 == last ? 0 : 1;
    if (left[i] > others + slack) return false;
  }
  return true;
}

void enumerate_from(std::vector<int>& left, CombineMode mode, std::size_t limit, std::vector<int>& prefix,
                    std::size_t length, std::vector<CombineSequence>& out) {
  if (out.size() >= limit) return;
  if (prefix.size() == length) {
    out.emplace_back(prefix);
    return;
  }
  const int last = prefix.empty() ? 0 : prefix.back();
  for (std::size_t i = 0; i < left.size() && out.size() < limit; ++i) {
    const int block = static_cast<int>(i) + 1;
    if (left[i] == 0) continue;
    if (mode == CombineMode::Proc2 && block == last) continue;
    --left[i];
    if (mode == CombineMode::Proc1 || arrangeable(left, block)) {
      prefix.push_back(block);
      enumerate_from(left, mode, limit, prefix, length, out);
      prefix.pop_back();
    }
    ++left[i];
  }
}

}  // namespace

std::vector<CombineSequence> enumerate_sequences(const std::vector<int>& repeats, CombineMode mode,
                                                 std::size_t limit) {
  if (limit == 0) throw InputError("sequence limit must be at least 1");
  for (int r : repeats) {
    if (r < 0) throw InputError("repetition counts must be non-negative");
  }
  if (mode == CombineMode::Proc2 && !arrangeable(repeats, 0)) {
    throw InfeasibleSequence("some block occurs more often than all others plus one");
  }
  std::vector<int> left = repeats;
  std::vector<int> prefix;
  std::vector<CombineSequence> out;
  const auto length = static_cast<std::size_t>(std::accumulate(repeats.begin(), repeats.end(), 0));
  enumerate_from(left, mode, limit, prefix, length, out);
  return out;
}

std::uint64_t sequence_count(const std::vector<int>& repeats) {
  // Product of binomials C(q_1+..+q_i, q_i).
  unsigned __int128 result = 1;
  std::uint64_t placed = 0;
  for (int q : repeats) {
    if (q < 0) throw InputError("repetition counts must be non-negative");
    for (int r = 1; r <= q; ++r) {
      ++placed;
      result = result * placed / static_cast<unsigned>(r);
      if (result > std::numeric_limits<std::uint64_t>::max()) throw InputError("sequence count overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

DagCombination combine_dags(const std::vector<DiGraph>& dags, const CombineSequence& seq) {
  if (dags.empty()) throw InputError("at least one DAG is required");
  std::vector<std::vector<Node>> orders;
  std::vector<int> sizes;
  std::vector<int> offsets;
  int n = 0;
  EdgeSet edges;
  for (const DiGraph& d : dags) {
    orders.push_back(topological_order(d));
    sizes.push_back(d.node_count());
    offsets.push_back(n);
    for (const Edge& e : d.edges()) edges.insert({e.from + n, e.to + n});
    n += d.node_count();
  }
  seq.require_counts(sizes);
  seq.require_no_adjacent_repeats();

  std::vector<int> seen(dags.size(), 0);
  std::vector<Node> spine;
  std::map<Node, int> times;
  for (std::size_t k = 1; k <= seq.size(); ++k) {
    const int i = seq.at(k) - 1;
    const Node v = offsets[i] + orders[i][seen[i]++];
    if (!spine.empty()) edges.insert({spine.back(), v});
    spine.push_back(v);
    times[v] = static_cast<int>(k);
  }

  DagCombination out;
  out.graph = DiGraph(n, std::move(edges));
  out.control = spine.front();
  out.tf = TimeFunction(ChainSet{Chain(spine)}, std::move(times));
  out.offsets = std::move(offsets);
  return out;
}

}  // namespace ssc
