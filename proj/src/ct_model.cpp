#include "ssc/ct_model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ssc/errors.hpp"

namespace ssc {

TimeFunction::TimeFunction(ChainSet chains, std::map<Node, int> times)
    : chains_(std::move(chains)), times_(std::move(times)) {}

TimeFunction TimeFunction::checked(ChainSet chains, std::map<Node, int> times) {
  TimeFunction tf(std::move(chains), std::move(times));
  auto violations = validate_time_function(tf);
  if (!violations.empty()) {
    std::string msg = "invalid time function:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw InputError(msg);
  }
  return tf;
}

TimeFunction TimeFunction::from_record(const ForcingRecord& record) {
  return TimeFunction(record.chains, record.times);
}

int TimeFunction::time(Node v) const {
  auto it = times_.find(v);
  if (it == times_.end()) throw InputError("no time assigned to node " + std::to_string(v));
  return it->second;
}

int TimeFunction::tmax(Node v) const {
  if (!chains_.contains(v)) throw InputError("node " + std::to_string(v) + " is on no chain");
  auto next = chains_.successor(v);
  return next ? time(*next) - 1 : gamma();
}

std::vector<std::string> validate_time_function(const TimeFunction& tf) {
  std::vector<std::string> out;
  const ChainSet& cs = tf.chains();
  if (cs.size() == 0) {
    out.push_back("chain set is empty");
    return out;
  }
  if (!cs.covers_range()) out.push_back("chain nodes are not exactly 1..n");

  for (const auto& [v, t] : tf.times()) {
    if (!cs.contains(v)) out.push_back("time given for node " + std::to_string(v) + " not on any chain");
  }
  bool complete = true;
  for (const Chain& c : cs.chains()) {
    for (Node v : c.nodes()) {
      if (!tf.times().contains(v)) {
        out.push_back("node " + std::to_string(v) + " has no time");
        complete = false;
      }
    }
  }
  if (!complete) return out;

  const int gamma = tf.gamma();
  std::map<int, Node> owner;
  for (const Chain& c : cs.chains()) {
    for (Node v : c.nodes()) {
      const int t = tf.time(v);
      if (cs.is_source(v)) {
        if (t != 1) out.push_back("source " + std::to_string(v) + " has T=" + std::to_string(t) + ", expected 1");
        continue;
      }
      if (t < 2 || t > gamma) {
        out.push_back("node " + std::to_string(v) + " has T=" + std::to_string(t) +
                      " outside [2," + std::to_string(gamma) + "]");
      }
      auto [it, fresh] = owner.emplace(t, v);
      if (!fresh) {
        out.push_back("nodes " + std::to_string(it->second) + " and " + std::to_string(v) +
                      " share T=" + std::to_string(t));
      }
    }
    for (const Edge& e : c.edges()) {
      if (tf.time(e.from) >= tf.time(e.to)) {
        out.push_back("T does not increase along chain edge (" + std::to_string(e.from) + "," +
                      std::to_string(e.to) + ")");
      }
    }
  }
  for (const Chain& c : cs.chains()) {
    for (Node v : c.nodes()) {
      if (tf.time(v) > tf.tmax(v)) {
        out.push_back("node " + std::to_string(v) + " has T > T_max");
      }
    }
  }
  return out;
}

bool is_admissible_edge(const TimeFunction& tf, Edge e) {
  if (tf.chains().successor(e.from) == e.to) return true;
  return tf.tmax(e.from) >= tf.time(e.to);
}

bool is_ct_constructed(const DiGraph& g, const TimeFunction& tf) {
  if (tf.node_count() != g.node_count()) return false;
  if (!is_chain_partition(g, tf.chains())) return false;
  for (const Edge& e : g.edges()) {
    if (!is_admissible_edge(tf, e)) return false;
  }
  return true;
}

DiGraph perfect_graph(const TimeFunction& tf) {
  const int n = tf.node_count();
  EdgeSet edges = tf.chains().edges();
  for (Node u = 1; u <= n; ++u) {
    const int reach = tf.tmax(u);
    for (Node v = 1; v <= n; ++v) {
      if (reach >= tf.time(v)) edges.insert({u, v});
    }
  }
  return DiGraph(n, std::move(edges));
}

std::int64_t perfect_edge_count(std::int64_t n, std::int64_t m) {
  if (m < 1 || m > n) throw InputError("perfect_edge_count requires 1 <= m <= n");
  // Both halves are integers: n(n+1) is even, and m(2n-m-1) is even since
  // m and m+1 have opposite parity.
  return n * (n + 1) / 2 + m * (2 * n - m - 1) / 2;
}

std::optional<TimeFunction> is_perfect(const DiGraph& g, const ControlSet& z) {
  require_zfs(g, z);
  const auto expected = perfect_edge_count(g.node_count(), static_cast<std::int64_t>(z.size()));
  if (static_cast<std::int64_t>(g.edge_count()) != expected) return std::nullopt;
  // The time function of a perfect graph is unique, so any schedule works.
  TimeFunction tf = TimeFunction::from_record(forcing_schedule(g, z));
  if (perfect_graph(tf) != g) return std::nullopt;
  return tf;
}

DiGraph sample_class_member(const TimeFunction& tf, std::mt19937_64& rng) {
  const DiGraph full = perfect_graph(tf);
  const EdgeSet required = tf.chains().edges();
  std::bernoulli_distribution coin(0.5);
  EdgeSet edges;
  for (const Edge& e : full.edges()) {
    if (required.contains(e) || coin(rng)) edges.insert(e);
  }
  return DiGraph(tf.node_count(), std::move(edges));
}

TimeFunction random_time_function(int n, int m, std::mt19937_64& rng) {
  if (m < 1 || m > n) throw InputError("random_time_function requires 1 <= m <= n");
  std::vector<Node> nodes(n);
  std::iota(nodes.begin(), nodes.end(), 1);
  std::shuffle(nodes.begin(), nodes.end(), rng);

  // Random composition of n into m positive chain lengths.
  std::vector<int> cuts(n - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(m - 1);
  std::sort(cuts.begin(), cuts.end());
  cuts.insert(cuts.begin(), 0);
  cuts.push_back(n);

  std::vector<Chain> chains;
  for (int c = 0; c < m; ++c) {
    chains.emplace_back(std::vector<Node>(nodes.begin() + cuts[c], nodes.begin() + cuts[c + 1]));
  }

  // Non-source times 2..gamma form a uniformly random interleaving of the
  // chain tails.
  std::map<Node, int> times;
  std::vector<std::size_t> next(m, 1);
  std::vector<int> remaining(m);
  int left = n - m;
  for (int c = 0; c < m; ++c) {
    times[chains[c].source()] = 1;
    remaining[c] = static_cast<int>(chains[c].size()) - 1;
  }
  for (int t = 2; left > 0; ++t, --left) {
    std::uniform_int_distribution<int> pick(0, left - 1);
    int r = pick(rng);
    int c = 0;
    while (r >= remaining[c]) r -= remaining[c++];
    times[chains[c].nodes()[next[c]++]] = t;
    --remaining[c];
  }
  return TimeFunction(ChainSet(std::move(chains)), std::move(times));
}

}  // namespace ssc
