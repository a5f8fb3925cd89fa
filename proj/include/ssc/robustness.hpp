#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ssc/ct_model.hpp"
#include "ssc/graph.hpp"
#include "ssc/zero_forcing.hpp"

namespace ssc {

enum class EdgeSetKind { Additive, Subtractive, InterNetwork };

std::string to_string(EdgeSetKind kind);

/// A critical or inter-network edge set together with the closed-form count
/// it has to match and the (C,T) it was derived from. The set depends on the
/// witness; the count does not.
struct EdgeSetReport {
  EdgeSetKind kind = EdgeSetKind::Additive;
  EdgeSet edges;
  std::int64_t cardinality = 0;
  std::int64_t bound = 0;
  TimeFunction witness;
};

/// E_perf \ E(g) for the (C,T) of a forcing schedule under `policy`.
/// Throws NotZfsError if z is not a ZFS of g.
EdgeSetReport critical_additive_set(const DiGraph& g, const ControlSet& z,
                                    const TieBreakPolicy& policy = TieBreakPolicy::lowest_forcer());

/// perfect_edge_count(n, |z|) - |E(g)|. Throws NotZfsError.
std::int64_t critical_additive_number(const DiGraph& g, const ControlSet& z);

/// E(g) minus the chain edges of a forcing schedule under `policy`.
/// Throws NotZfsError.
EdgeSetReport critical_subtractive_set(const DiGraph& g, const ControlSet& z,
                                       const TieBreakPolicy& policy = TieBreakPolicy::lowest_forcer());

/// |E(g)| - n + |z|. Throws NotZfsError.
std::int64_t critical_subtractive_number(const DiGraph& g, const ControlSet& z);

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct VerificationOutcome {
  Verdict verdict = Verdict::Pass;
  bool exhaustive = false;
  std::uint64_t subsets_checked = 0;
  std::optional<EdgeSet> counterexample;
};

inline constexpr std::uint64_t kDefaultVerifyBudget = std::uint64_t{1} << 20;
inline constexpr int kSampledSubsets = 10000;

/// Applies subsets of report.edges to g (removal for Subtractive, addition
/// otherwise) and checks that z stays a ZFS. Exhaustive when
/// 2^|edges| <= budget, yielding Pass or Fail. Otherwise checks every
/// singleton, the full set and kSampledSubsets uniform random subsets drawn
/// from `seed`; a clean sampled run is Inconclusive. The reported
/// counterexample is the first failing subset in check order.
VerificationOutcome verify_edge_set(const DiGraph& g, const ControlSet& z, const EdgeSetReport& report,
                                    std::uint64_t budget = kDefaultVerifyBudget, std::uint64_t seed = 0);

}  // namespace ssc
