#include "ssc/zero_forcing.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

namespace {

// Coloring state of the forcing process. white_out[v] counts white
// out-neighbors of v other than v itself.
class ForcingState {
 public:
  ForcingState(const DiGraph& g, const NodeSet& black) : g_(&g), black_(g.node_count() + 1, false),
                                                         white_out_(g.node_count() + 1, 0) {
    for (Node v : black) black_[v] = true;
    black_count_ = static_cast<int>(black.size());
    for (const Edge& e : g.edges()) {
      if (e.from != e.to && !black_[e.to]) ++white_out_[e.from];
    }
  }

  bool is_black(Node v) const { return black_[v]; }
  bool all_black() const { return black_count_ == g_->node_count(); }

  // The unique white out-neighbor v can force, if any.
  std::optional<Node> force_target(Node v) const {
    if (!black_[v] || white_out_[v] != 1) return std::nullopt;
    for (Node u : g_->out_neighbors(v)) {
      if (u != v && !black_[u]) return u;
    }
    return std::nullopt;
  }

  std::vector<Force> available_forces() const {
    std::vector<Force> out;
    for (Node v = 1; v <= g_->node_count(); ++v) {
      if (auto u = force_target(v)) out.push_back({v, *u});
    }
    return out;
  }

  void blacken(Node u) {
    black_[u] = true;
    ++black_count_;
    for (Node w : g_->in_neighbors(u)) {
      if (w != u) --white_out_[w];
    }
  }

  NodeSet black_nodes() const {
    NodeSet out;
    for (Node v = 1; v <= g_->node_count(); ++v) {
      if (black_[v]) out.insert(v);
    }
    return out;
  }

  NodeSet white_nodes() const {
    NodeSet out;
    for (Node v = 1; v <= g_->node_count(); ++v) {
      if (!black_[v]) out.insert(v);
    }
    return out;
  }

 private:
  const DiGraph* g_;
  std::vector<bool> black_;
  std::vector<int> white_out_;
  int black_count_ = 0;
};

void require_nodes(const DiGraph& g, const NodeSet& nodes) {
  for (Node v : nodes) {
    if (!g.contains(v)) throw InputError("node " + std::to_string(v) + " outside the graph");
  }
}

Force pick(const std::vector<Force>& candidates, TieBreakPolicy::Kind kind) {
  if (kind == TieBreakPolicy::Kind::LowestForcedId) {
    return *std::min_element(candidates.begin(), candidates.end(), [](const Force& a, const Force& b) {
      return std::pair{a.forced, a.forcer} < std::pair{b.forced, b.forcer};
    });
  }
  // Candidates come out ordered by forcer, and a forcer has one target.
  return candidates.front();
}

void enumerate_from(const DiGraph& g, ForcingState& state, std::vector<Force>& prefix,
                    std::size_t limit, std::vector<std::vector<Force>>& out) {
  if (out.size() >= limit) return;
  auto candidates = state.available_forces();
  if (candidates.empty()) {
    out.push_back(prefix);
    return;
  }
  for (const Force& f : candidates) {
    if (out.size() >= limit) return;
    ForcingState next = state;
    next.blacken(f.forced);
    prefix.push_back(f);
    enumerate_from(g, next, prefix, limit, out);
    prefix.pop_back();
  }
}

}  // namespace

NodeSet derived_set(const DiGraph& g, const NodeSet& initially_black) {
  require_nodes(g, initially_black);
  ForcingState state(g, initially_black);
  std::vector<Node> work(initially_black.begin(), initially_black.end());
  // Whenever a node turns black its in-neighbors may become able to force,
  // and so may the node itself.
  while (!work.empty()) {
    Node v = work.back();
    work.pop_back();
    auto target = state.force_target(v);
    if (!target) continue;
    state.blacken(*target);
    work.push_back(*target);
    for (Node w : g.in_neighbors(*target)) work.push_back(w);
  }
  return state.black_nodes();
}

bool is_zfs(const DiGraph& g, const ControlSet& z) {
  z.require_within(g);
  return static_cast<int>(derived_set(g, z.nodes()).size()) == g.node_count();
}

void require_zfs(const DiGraph& g, const ControlSet& z) {
  z.require_within(g);
  auto derived = derived_set(g, z.nodes());
  if (static_cast<int>(derived.size()) == g.node_count()) return;
  NodeSet white;
  for (Node v = 1; v <= g.node_count(); ++v) {
    if (!derived.contains(v)) white.insert(v);
  }
  throw NotZfsError(std::move(white));
}

ForcingRecord make_record(const DiGraph& g, const ControlSet& z, std::vector<Force> forces) {
  ForcingRecord record;
  record.gamma = g.node_count() - static_cast<int>(z.size()) + 1;
  for (Node v : z) record.times[v] = 1;
  std::map<Node, Node> next;
  for (std::size_t k = 0; k < forces.size(); ++k) {
    record.times[forces[k].forced] = static_cast<int>(k) + 2;
    next[forces[k].forcer] = forces[k].forced;
  }
  std::vector<Chain> chains;
  for (Node source : z) {
    std::vector<Node> nodes{source};
    for (auto it = next.find(source); it != next.end(); it = next.find(it->second)) {
      nodes.push_back(it->second);
    }
    chains.emplace_back(std::move(nodes));
  }
  record.chains = ChainSet(std::move(chains));
  record.forces = std::move(forces);
  return record;
}

ForcingRecord forcing_schedule(const DiGraph& g, const ControlSet& z, const TieBreakPolicy& policy) {
  z.require_within(g);
  ForcingState state(g, z.nodes());
  std::vector<Force> forces;

  if (policy.kind() == TieBreakPolicy::Kind::Explicit) {
    for (const Force& f : policy.forces()) {
      if (!g.contains(f.forcer) || !g.contains(f.forced)) {
        throw InputError("explicit force references a node outside the graph");
      }
      auto target = state.force_target(f.forcer);
      if (!target || *target != f.forced) {
        throw InputError("explicit force " + std::to_string(f.forcer) + "->" +
                         std::to_string(f.forced) + " is not legal at step " +
                         std::to_string(forces.size() + 1));
      }
      state.blacken(f.forced);
      forces.push_back(f);
    }
    if (!state.all_black()) {
      if (!state.available_forces().empty()) {
        throw InputError("explicit force list ends before the forcing process does");
      }
      throw NotZfsError(state.white_nodes());
    }
    return make_record(g, z, std::move(forces));
  }

  while (!state.all_black()) {
    auto candidates = state.available_forces();
    if (candidates.empty()) throw NotZfsError(state.white_nodes());
    Force f = pick(candidates, policy.kind());
    state.blacken(f.forced);
    forces.push_back(f);
  }
  return make_record(g, z, std::move(forces));
}

std::vector<ForcingRecord> enumerate_forcing_schedules(const DiGraph& g, const ControlSet& z,
                                                       std::size_t limit) {
  if (limit == 0) throw InputError("schedule limit must be at least 1");
  require_zfs(g, z);

  ForcingState state(g, z.nodes());
  std::vector<Force> prefix;
  std::vector<std::vector<Force>> lists;
  enumerate_from(g, state, prefix, limit, lists);

  std::vector<ForcingRecord> out;
  out.reserve(lists.size());
  for (auto& list : lists) out.push_back(make_record(g, z, std::move(list)));
  return out;
}

}  // namespace ssc
