#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ssc/graph.hpp"
#include "ssc/zero_forcing.hpp"

namespace ssc {

/// Time function T over the nodes of a chain set, with the derived T_max.
///
/// gamma = n - m + 1. T_max(v) is gamma for a chain sink and T(v+1) - 1
/// otherwise, so the interval [T(v), T_max(v)] is the stretch of iterations
/// during which v is the last black node of its chain. T_max is always
/// derived and never supplied by the caller.
///
/// Construction does not validate; call validate_time_function() (or use
/// TimeFunction::checked) before relying on the defining conditions.
class TimeFunction {
 public:
  TimeFunction() = default;
  TimeFunction(ChainSet chains, std::map<Node, int> times);

  /// Throws InputError listing the violations if the function is invalid.
  static TimeFunction checked(ChainSet chains, std::map<Node, int> times);
  /// Times and chains of a forcing record.
  static TimeFunction from_record(const ForcingRecord& record);

  const ChainSet& chains() const noexcept { return chains_; }
  const std::map<Node, int>& times() const noexcept { return times_; }
  int node_count() const noexcept { return chains_.node_count(); }
  int chain_count() const noexcept { return static_cast<int>(chains_.size()); }
  int gamma() const noexcept { return node_count() - chain_count() + 1; }

  int time(Node v) const;
  int tmax(Node v) const;

  friend bool operator==(const TimeFunction& a, const TimeFunction& b) {
    return a.chains_ == b.chains_ && a.times_ == b.times_;
  }

 private:
  ChainSet chains_;
  std::map<Node, int> times_;
};

/// All violations of the defining conditions: sources at time 1, distinct
/// non-source times in [2, gamma], strictly increasing along each chain,
/// T(v) <= T_max(v), and a time for every chain node over nodes [1, n].
/// Empty means valid.
std::vector<std::string> validate_time_function(const TimeFunction& tf);

/// Membership in the class of (C,T)-constructed graphs: every chain edge is
/// present and no other edge (u,v) has T_max(u) < T(v).
bool is_ct_constructed(const DiGraph& g, const TimeFunction& tf);

/// Whether (u,v) may be an edge of a (C,T)-constructed graph.
bool is_admissible_edge(const TimeFunction& tf, Edge e);

/// The perfect (C,T)-constructed graph: chain edges plus every (u,v) with
/// T_max(u) >= T(v). Contains all n self-loops.
DiGraph perfect_graph(const TimeFunction& tf);

/// |E_perf| = n(n+1)/2 + m(2n-m-1)/2. Requires 1 <= m <= n.
std::int64_t perfect_edge_count(std::int64_t n, std::int64_t m);

/// Returns a witness (C,T) with g equal to its perfect graph, or nullopt.
/// Rejects in O(1) when |E(g)| differs from perfect_edge_count. Throws
/// NotZfsError if z is not a ZFS of g.
std::optional<TimeFunction> is_perfect(const DiGraph& g, const ControlSet& z);

/// Uniform random member of the class: chain edges plus an independent
/// fair coin for every other admissible edge.
DiGraph sample_class_member(const TimeFunction& tf, std::mt19937_64& rng);

/// Random valid (C,T) on nodes 1..n with m chains.
TimeFunction random_time_function(int n, int m, std::mt19937_64& rng);

}  // namespace ssc
