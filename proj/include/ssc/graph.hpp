#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

namespace ssc {

// Nodes are dense integers 1..n.
using Node = int;

struct Edge {
  Node from = 0;
  Node to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeSet = std::set<Edge>;
using NodeSet = std::set<Node>;

/// Immutable directed graph on nodes 1..n. Self-loops are allowed, parallel
/// edges are not (the edge set is a set).
class DiGraph {
 public:
  explicit DiGraph(int node_count);
  DiGraph(int node_count, EdgeSet edges);

  int node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const EdgeSet& edges() const noexcept { return edges_; }

  bool contains(Node v) const noexcept { return v >= 1 && v <= n_; }
  bool has_edge(Node from, Node to) const { return edges_.contains(Edge{from, to}); }

  // Sorted ascending. A self-loop on v makes v its own out/in-neighbor here;
  // the forcing code filters it.
  std::span<const Node> out_neighbors(Node v) const;
  std::span<const Node> in_neighbors(Node v) const;

  friend bool operator==(const DiGraph& a, const DiGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_;
  EdgeSet edges_;
  std::vector<std::vector<Node>> out_;
  std::vector<std::vector<Node>> in_;
};

/// G + E'. Throws InputError when an endpoint is outside [1,n].
DiGraph add_edges(const DiGraph& g, const EdgeSet& extra);

/// G - E'. Absent edges are ignored.
DiGraph remove_edges(const DiGraph& g, const EdgeSet& removed);

/// Ordering in which every edge (u,v) has v before u, so that edges run from
/// higher to lower position. Among ready nodes the lowest id goes first.
/// Throws CyclicError if g has a directed cycle (self-loops included).
std::vector<Node> topological_order(const DiGraph& g);

/// A directed path given by its node sequence; consecutive nodes are the
/// chain edges. A single node is both source and sink.
class Chain {
 public:
  explicit Chain(std::vector<Node> nodes);
  Chain(std::initializer_list<Node> nodes) : Chain(std::vector<Node>(nodes)) {}

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  Node source() const { return nodes_.front(); }
  Node sink() const { return nodes_.back(); }
  std::vector<Edge> edges() const;

  friend bool operator==(const Chain&, const Chain&) = default;

 private:
  std::vector<Node> nodes_;
};

/// Pairwise node-disjoint chains C_1..C_m.
class ChainSet {
 public:
  ChainSet() = default;
  explicit ChainSet(std::vector<Chain> chains);
  ChainSet(std::initializer_list<Chain> chains) : ChainSet(std::vector<Chain>(chains)) {}

  const std::vector<Chain>& chains() const noexcept { return chains_; }
  std::size_t size() const noexcept { return chains_.size(); }
  int node_count() const noexcept { return static_cast<int>(position_.size()); }

  bool contains(Node v) const { return position_.contains(v); }
  bool is_source(Node v) const;
  bool is_sink(Node v) const;
  // v+1: the out-neighbor of v on its chain, if v is not a sink.
  std::optional<Node> successor(Node v) const;
  // Index of the chain holding v.
  std::size_t chain_index(Node v) const;

  NodeSet sources() const;
  EdgeSet edges() const;
  // True if the chain nodes are exactly {1..node_count()}.
  bool covers_range() const;

  friend bool operator==(const ChainSet& a, const ChainSet& b) { return a.chains_ == b.chains_; }

 private:
  std::vector<Chain> chains_;
  std::map<Node, std::pair<std::size_t, std::size_t>> position_;  // node -> (chain, index)
};

/// Chains are disjoint, cover [1,n] and every chain edge is an edge of g.
bool is_chain_partition(const DiGraph& g, std::span<const Chain> chains);
bool is_chain_partition(const DiGraph& g, const ChainSet& chains);

/// Nonempty set of control nodes V_C.
class ControlSet {
 public:
  explicit ControlSet(NodeSet nodes);
  ControlSet(std::initializer_list<Node> nodes) : ControlSet(NodeSet(nodes)) {}

  const NodeSet& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(Node v) const { return nodes_.contains(v); }
  auto begin() const { return nodes_.begin(); }
  auto end() const { return nodes_.end(); }

  // Throws InputError if a control node lies outside g.
  void require_within(const DiGraph& g) const;

  friend bool operator==(const ControlSet&, const ControlSet&) = default;

 private:
  NodeSet nodes_;
};

}  // namespace ssc
