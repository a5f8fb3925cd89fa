#include "ssc/robustness.hpp"

#include <atomic>
#include <limits>
#include <random>
#include <vector>

#include "ssc/errors.hpp"
#include "ssc/parallel.hpp"

namespace ssc {

std::string to_string(EdgeSetKind kind) {
  switch (kind) {
    case EdgeSetKind::Additive: return "additive";
    case EdgeSetKind::Subtractive: return "subtractive";
    case EdgeSetKind::InterNetwork: return "inter-network";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

EdgeSetReport critical_additive_set(const DiGraph& g, const ControlSet& z, const TieBreakPolicy& policy) {
  EdgeSetReport report;
  report.kind = EdgeSetKind::Additive;
  report.witness = TimeFunction::from_record(forcing_schedule(g, z, policy));
  const DiGraph perfect = perfect_graph(report.witness);
  for (const Edge& e : perfect.edges()) {
    if (!g.has_edge(e.from, e.to)) report.edges.insert(e);
  }
  report.cardinality = static_cast<std::int64_t>(report.edges.size());
  report.bound = critical_additive_number(g, z);
  return report;
}

std::int64_t critical_additive_number(const DiGraph& g, const ControlSet& z) {
  require_zfs(g, z);
  return perfect_edge_count(g.node_count(), static_cast<std::int64_t>(z.size())) -
         static_cast<std::int64_t>(g.edge_count());
}

EdgeSetReport critical_subtractive_set(const DiGraph& g, const ControlSet& z, const TieBreakPolicy& policy) {
  EdgeSetReport report;
  report.kind = EdgeSetKind::Subtractive;
  report.witness = TimeFunction::from_record(forcing_schedule(g, z, policy));
  const EdgeSet chain_edges = report.witness.chains().edges();
  for (const Edge& e : g.edges()) {
    if (!chain_edges.contains(e)) report.edges.insert(e);
  }
  report.cardinality = static_cast<std::int64_t>(report.edges.size());
  report.bound = critical_subtractive_number(g, z);
  return report;
}

std::int64_t critical_subtractive_number(const DiGraph& g, const ControlSet& z) {
  require_zfs(g, z);
  return static_cast<std::int64_t>(g.edge_count()) - g.node_count() + static_cast<std::int64_t>(z.size());
}

namespace {

// Checks `count` subsets produced by subset(i) and returns the smallest
// failing index, or count if none fails. Indices above a known failure are
// skipped, so the result does not depend on thread scheduling.
template <class SubsetFn>
std::size_t first_failure(const DiGraph& g, const ControlSet& z, EdgeSetKind kind, std::size_t count,
                          SubsetFn&& subset) {
  std::atomic<std::size_t> failure{count};
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t end = std::min(count, (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      if (i >= failure.load()) return;
      const EdgeSet es = subset(i);
      const DiGraph h = kind == EdgeSetKind::Subtractive ? remove_edges(g, es) : add_edges(g, es);
      if (!is_zfs(h, z)) {
        std::size_t seen = failure.load();
        while (i < seen && !failure.compare_exchange_weak(seen, i)) {
        }
        return;
      }
    }
  });
  return failure.load();
}

}  // namespace

VerificationOutcome verify_edge_set(const DiGraph& g, const ControlSet& z, const EdgeSetReport& report,
                                    std::uint64_t budget, std::uint64_t seed) {
  z.require_within(g);
  const std::vector<Edge> edges(report.edges.begin(), report.edges.end());
  const std::size_t k = edges.size();
  VerificationOutcome out;

  auto from_mask = [&](std::uint64_t mask) {
    EdgeSet es;
    for (std::size_t b = 0; b < k; ++b) {
      if (mask >> b & 1) es.insert(edges[b]);
    }
    return es;
  };

  if (k < 63 && (std::uint64_t{1} << k) <= budget) {
    const std::size_t count = std::size_t{1} << k;
    out.exhaustive = true;
    const std::size_t bad = first_failure(g, z, report.kind, count, from_mask);
    if (bad < count) {
      out.verdict = Verdict::Fail;
      out.counterexample = from_mask(bad);
      out.subsets_checked = bad + 1;
    } else {
      out.verdict = Verdict::Pass;
      out.subsets_checked = count;
    }
    return out;
  }

  std::vector<EdgeSet> subsets;
  subsets.reserve(k + 1 + kSampledSubsets);
  for (const Edge& e : edges) subsets.push_back(EdgeSet{e});
  subsets.push_back(report.edges);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  for (int s = 0; s < kSampledSubsets; ++s) {
    EdgeSet es;
    for (const Edge& e : edges) {
      if (coin(rng)) es.insert(e);
    }
    subsets.push_back(std::move(es));
  }
  const std::size_t bad =
      first_failure(g, z, report.kind, subsets.size(), [&](std::size_t i) { return subsets[i]; });
  if (bad < subsets.size()) {
    out.verdict = Verdict::Fail;
    out.counterexample = subsets[bad];
    out.subsets_checked = bad + 1;
  } else {
    out.verdict = Verdict::Inconclusive;
    out.subsets_checked = subsets.size();
  }
  return out;
}

}  // namespace ssc
