#include "ssc/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

namespace {

void require_endpoints(int n, const EdgeSet& edges) {
  for (const Edge& e : edges) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      throw InputError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                       ") has an endpoint outside [1," + std::to_string(n) + "]");
    }
  }
}

}  // namespace

DiGraph::DiGraph(int node_count) : DiGraph(node_count, EdgeSet{}) {}

DiGraph::DiGraph(int node_count, EdgeSet edges)
    : n_(node_count), edges_(std::move(edges)), out_(node_count + 1), in_(node_count + 1) {
  if (n_ < 1) throw InputError("a graph needs at least one node");
  require_endpoints(n_, edges_);
  // edges_ is ordered by (from, to), so out-lists come out sorted.
  for (const Edge& e : edges_) out_[e.from].push_back(e.to);
  for (const Edge& e : edges_) in_[e.to].push_back(e.from);
  for (auto& list : in_) std::sort(list.begin(), list.end());
}

std::span<const Node> DiGraph::out_neighbors(Node v) const {
  if (!contains(v)) throw InputError("node " + std::to_string(v) + " out of range");
  return out_[v];
}

std::span<const Node> DiGraph::in_neighbors(Node v) const {
  if (!contains(v)) throw InputError("node " + std::to_string(v) + " out of range");
  return in_[v];
}

DiGraph add_edges(const DiGraph& g, const EdgeSet& extra) {
  require_endpoints(g.node_count(), extra);
  EdgeSet merged = g.edges();
  merged.insert(extra.begin(), extra.end());
  return DiGraph(g.node_count(), std::move(merged));
}

DiGraph remove_edges(const DiGraph& g, const EdgeSet& removed) {
  EdgeSet kept;
  for (const Edge& e : g.edges()) {
    if (!removed.contains(e)) kept.insert(kept.end(), e);
  }
  return DiGraph(g.node_count(), std::move(kept));
}

std::vector<Node> topological_order(const DiGraph& g) {
  const int n = g.node_count();
  // Kahn's algorithm on out-degrees: a node is ready once all its
  // out-neighbors are placed.
  std::vector<int> pending(n + 1, 0);
  for (const Edge& e : g.edges()) ++pending[e.from];

  std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
  for (Node v = 1; v <= n; ++v) {
    if (pending[v] == 0) ready.push(v);
  }

  std::vector<Node> order;
  order.reserve(n);
  while (!ready.empty()) {
    Node v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Node u : g.in_neighbors(v)) {
      if (--pending[u] == 0) ready.push(u);
    }
  }
  if (static_cast<int>(order.size()) != n) throw CyclicError();
  return order;
}

Chain::Chain(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InputError("a chain needs at least one node");
  NodeSet seen;
  for (Node v : nodes_) {
    if (!seen.insert(v).second) {
      throw InputError("node " + std::to_string(v) + " repeated within a chain");
    }
  }
}

std::vector<Edge> Chain::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) out.push_back({nodes_[i], nodes_[i + 1]});
  return out;
}

ChainSet::ChainSet(std::vector<Chain> chains) : chains_(std::move(chains)) {
  for (std::size_t c = 0; c < chains_.size(); ++c) {
    const auto& nodes = chains_[c].nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!position_.emplace(nodes[i], std::pair{c, i}).second) {
        throw InputError("node " + std::to_string(nodes[i]) + " appears in two chains");
      }
    }
  }
}

bool ChainSet::is_source(Node v) const {
  auto it = position_.find(v);
  return it != position_.end() && it->second.second == 0;
}

bool ChainSet::is_sink(Node v) const {
  auto it = position_.find(v);
  return it != position_.end() && it->second.second + 1 == chains_[it->second.first].size();
}

std::optional<Node> ChainSet::successor(Node v) const {
  auto it = position_.find(v);
  if (it == position_.end()) return std::nullopt;
  const auto& nodes = chains_[it->second.first].nodes();
  if (it->second.second + 1 == nodes.size()) return std::nullopt;
  return nodes[it->second.second + 1];
}

std::size_t ChainSet::chain_index(Node v) const {
  auto it = position_.find(v);
  if (it == position_.end()) throw InputError("node " + std::to_string(v) + " is on no chain");
  return it->second.first;
}

NodeSet ChainSet::sources() const {
  NodeSet out;
  for (const Chain& c : chains_) out.insert(c.source());
  return out;
}

EdgeSet ChainSet::edges() const {
  EdgeSet out;
  for (const Chain& c : chains_) {
    for (const Edge& e : c.edges()) out.insert(e);
  }
  return out;
}

bool ChainSet::covers_range() const {
  if (position_.empty()) return false;
  return position_.begin()->first == 1 &&
         position_.rbegin()->first == static_cast<Node>(position_.size());
}

bool is_chain_partition(const DiGraph& g, std::span<const Chain> chains) {
  std::vector<bool> seen(g.node_count() + 1, false);
  int covered = 0;
  for (const Chain& c : chains) {
    for (Node v : c.nodes()) {
      if (!g.contains(v) || seen[v]) return false;
      seen[v] = true;
      ++covered;
    }
    for (const Edge& e : c.edges()) {
      if (!g.has_edge(e.from, e.to)) return false;
    }
  }
  return covered == g.node_count();
}

bool is_chain_partition(const DiGraph& g, const ChainSet& chains) {
  return is_chain_partition(g, std::span<const Chain>(chains.chains()));
}

ControlSet::ControlSet(NodeSet nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw InputError("control set must not be empty");
  if (*nodes_.begin() < 1) throw InputError("control node ids start at 1");
}

void ControlSet::require_within(const DiGraph& g) const {
  if (*nodes_.rbegin() > g.node_count()) {
    throw InputError("control node " + std::to_string(*nodes_.rbegin()) +
                     " outside the graph");
  }
}

}  // namespace ssc
