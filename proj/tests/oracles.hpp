// Independent reference implementations and shared fixtures for the tests.
// Nothing here calls into the library's algorithms; only its value types
// are used.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "ssc/combine.hpp"
#include "ssc/ct_model.hpp"
#include "ssc/graph.hpp"
#include "ssc/numeric_oracle.hpp"

namespace oracle {

using ssc::DiGraph;
using ssc::Edge;
using ssc::EdgeSet;
using ssc::Node;
using ssc::NodeSet;

// Recolors by scanning every node against an adjacency matrix until a full
// pass changes nothing.
inline NodeSet derived_set(const DiGraph& g, const NodeSet& start) {
  const int n = g.node_count();
  std::vector<std::vector<bool>> adj(n + 1, std::vector<bool>(n + 1, false));
  for (const Edge& e : g.edges()) adj[e.from][e.to] = true;
  std::vector<bool> black(n + 1, false);
  for (Node v : start) black[v] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Node u = 1; u <= n; ++u) {
      if (!black[u]) continue;
      int white = 0;
      Node target = 0;
      for (Node v = 1; v <= n; ++v) {
        if (v != u && adj[u][v] && !black[v]) {
          ++white;
          target = v;
        }
      }
      if (white == 1) {
        black[target] = true;
        changed = true;
      }
    }
  }
  NodeSet out;
  for (Node v = 1; v <= n; ++v) {
    if (black[v]) out.insert(v);
  }
  return out;
}

inline bool is_zfs(const DiGraph& g, const NodeSet& z) {
  return static_cast<int>(oracle::derived_set(g, z).size()) == g.node_count();
}

// Three-color DFS; a self-loop is a cycle.
inline bool has_cycle(const DiGraph& g) {
  const int n = g.node_count();
  std::vector<int> color(n + 1, 0);
  std::function<bool(Node)> visit = [&](Node u) {
    color[u] = 1;
    for (const Edge& e : g.edges()) {
      if (e.from != u) continue;
      if (color[e.to] == 1) return true;
      if (color[e.to] == 0 && visit(e.to)) return true;
    }
    color[u] = 2;
    return false;
  };
  for (Node v = 1; v <= n; ++v) {
    if (color[v] == 0 && visit(v)) return true;
  }
  return false;
}

// Classic RK4 on dx/dt = A(t) x for each basis vector, `steps` steps per
// piece.
inline Eigen::MatrixXd rk4_transition(const ssc::LtvSchedule& s, double t0, double t1, int steps) {
  const int n = s.node_count();
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(n, n);
  for (const auto& p : s.pieces()) {
    const double a = std::max(p.start, t0);
    const double b = std::min(p.end, t1);
    if (b <= a) continue;
    const double h = (b - a) / steps;
    for (int k = 0; k < steps; ++k) {
      const Eigen::MatrixXd k1 = p.matrix * x;
      const Eigen::MatrixXd k2 = p.matrix * (x + 0.5 * h * k1);
      const Eigen::MatrixXd k3 = p.matrix * (x + 0.5 * h * k2);
      const Eigen::MatrixXd k4 = p.matrix * (x + h * k3);
      x += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
  }
  return x;
}

// Edges (u,v) with T_max(u) >= T(v), plus chain edges, computed from the
// raw chains and times without the library's TimeFunction accessors.
inline EdgeSet perfect_edges(const std::vector<std::vector<Node>>& chains, const std::map<Node, int>& t) {
  int n = 0;
  for (const auto& c : chains) n += static_cast<int>(c.size());
  const int gamma = n - static_cast<int>(chains.size()) + 1;
  std::map<Node, int> tmax;
  EdgeSet out;
  for (const auto& c : chains) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      tmax[c[i]] = i + 1 < c.size() ? t.at(c[i + 1]) - 1 : gamma;
      if (i + 1 < c.size()) out.insert({c[i], c[i + 1]});
    }
  }
  for (Node u = 1; u <= n; ++u) {
    for (Node v = 1; v <= n; ++v) {
      if (tmax[u] >= t.at(v)) out.insert({u, v});
    }
  }
  return out;
}

// Every subset of `candidates` added to (or removed from) g keeps z a ZFS.
inline bool all_subsets_keep_zfs(const DiGraph& g, const NodeSet& z, const std::vector<Edge>& candidates,
                                 bool remove) {
  const std::size_t k = candidates.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    EdgeSet es = g.edges();
    for (std::size_t b = 0; b < k; ++b) {
      if (!(mask >> b & 1)) continue;
      if (remove) {
        es.erase(candidates[b]);
      } else {
        es.insert(candidates[b]);
      }
    }
    if (!oracle::is_zfs(DiGraph(g.node_count(), es), z)) return false;
  }
  return true;
}

// Largest set of absent edges whose every subset can be added keeping z a
// ZFS, by search over all sets of absent edges (small n only).
inline std::size_t max_additive_size(const DiGraph& g, const NodeSet& z) {
  std::vector<Edge> absent;
  for (Node u = 1; u <= g.node_count(); ++u) {
    for (Node v = 1; v <= g.node_count(); ++v) {
      if (!g.has_edge(u, v)) absent.push_back({u, v});
    }
  }
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << absent.size()); ++mask) {
    std::vector<Edge> pick;
    for (std::size_t b = 0; b < absent.size(); ++b) {
      if (mask >> b & 1) pick.push_back(absent[b]);
    }
    if (pick.size() > best && all_subsets_keep_zfs(g, z, pick, false)) best = pick.size();
  }
  return best;
}

inline DiGraph random_graph(int n, double p, std::mt19937_64& rng, bool loops = false) {
  std::bernoulli_distribution coin(p);
  EdgeSet es;
  for (Node u = 1; u <= n; ++u) {
    for (Node v = 1; v <= n; ++v) {
      if ((u != v || loops) && coin(rng)) es.insert({u, v});
    }
  }
  return DiGraph(n, es);
}

inline DiGraph random_dag(int n, double p, std::mt19937_64& rng) {
  // Edges only from a higher to a lower position of a random permutation.
  std::vector<Node> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution coin(p);
  EdgeSet es;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (coin(rng)) es.insert({perm[i], perm[j]});
    }
  }
  return DiGraph(n, es);
}

inline std::vector<NodeSet> all_control_sets(int n) {
  std::vector<NodeSet> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    NodeSet s;
    for (int b = 0; b < n; ++b) {
      if (mask >> b & 1) s.insert(b + 1);
    }
    out.push_back(s);
  }
  return out;
}

inline EdgeSet bidirectional(std::initializer_list<std::pair<Node, Node>> pairs) {
  EdgeSet es;
  for (auto [a, b] : pairs) {
    es.insert({a, b});
    es.insert({b, a});
  }
  return es;
}

// Six nodes v1..v6 = 1..6, seven bidirectional links, controls {v1,v2}.
inline DiGraph six_node() { return DiGraph(6, bidirectional({{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {2, 6}, {1, 6}})); }

inline std::vector<ssc::Force> six_node_forces() { return {{1, 6}, {2, 3}, {3, 4}, {4, 5}}; }

inline EdgeSet six_node_critical_additive() {
  return {{3, 6}, {6, 3}, {4, 6}, {6, 4}, {1, 1}, {2, 2}, {3, 3}, {4, 4},
          {5, 5}, {6, 6}, {3, 1}, {4, 1}, {5, 1}, {4, 2}, {5, 2}, {5, 3}};
}

// Two chains: v1,v2,v3 = 1,2,3 and u1,u2 = 4,5.
inline ssc::TimeFunction two_chain_tf() {
  return ssc::TimeFunction::checked(ssc::ChainSet{{1, 2, 3}, {4, 5}}, {{1, 1}, {4, 1}, {2, 2}, {5, 3}, {3, 4}});
}

// Block G1: v1,v2,v3 = 1,2,3.
inline ssc::Block block_g1() {
  return {DiGraph(3, bidirectional({{1, 2}, {2, 3}})),
          ssc::TimeFunction::checked(ssc::ChainSet{{1, 2, 3}}, {{1, 1}, {2, 2}, {3, 3}})};
}

// Block G2: u1..u4 = 1..4.
inline ssc::Block block_g2() {
  return {DiGraph(4, bidirectional({{1, 2}, {2, 4}, {1, 3}, {4, 3}, {1, 4}})),
          ssc::TimeFunction::checked(ssc::ChainSet{{2, 4}, {1, 3}}, {{1, 1}, {2, 1}, {4, 2}, {3, 3}})};
}

// 16 inter edges between the two blocks in combined ids (G1 first, G2
// offset by 3).
inline EdgeSet block_inter_edges() {
  const Node v1 = 1, v2 = 2, v3 = 3, u1 = 4, u2 = 5, u3 = 6, u4 = 7;
  return bidirectional({{v1, u2}, {v1, u1}, {v1, u4}, {v2, u1}, {v2, u4}, {v3, u1}, {v3, u3}, {v3, u4}});
}

}  // namespace oracle
