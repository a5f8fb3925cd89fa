#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ssc/ct_model.hpp"
#include "ssc/graph.hpp"

namespace ssc {

// Zero: all diagonal entries 0. NonZero: all nonzero. Mixed: each diagonal
// entry nonzero with probability 1/2. Loops: nonzero exactly on self-loops.
enum class DiagMode { Zero, NonZero, Mixed, Loops };

/// A member of the qualitative class of a graph: for i != j, A(i,j) != 0
/// iff (j,i) is an edge (0-based indices, node v is row v-1).
struct WeightSample {
  Eigen::MatrixXd matrix;
  std::uint64_t seed = 0;
  DiagMode diag_mode = DiagMode::Zero;
};

/// Nonzero entries have magnitude uniform in [0.1, 2] and a fair random
/// sign. Deterministic in seed.
WeightSample sample_qualitative(const DiGraph& g, std::uint64_t seed, DiagMode mode);

/// Columns e_j for j in the control set.
Eigen::MatrixXd input_matrix(int n, const ControlSet& z);

/// Singular values below rows * eps * sigma_max * 1e3 count as zero.
int numerical_rank(const Eigen::MatrixXd& m);

/// Rank of [B, AB, ..., A^{n-1}B].
int kalman_rank(const Eigen::MatrixXd& a, const ControlSet& z);

/// Seed for trial `index` of a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index);

struct OracleReport {
  bool zfs = false;
  int trials = 0;
  int full_rank = 0;
  std::vector<std::uint64_t> deficient_seeds;  // samples whose Kalman rank was below n
  NodeSet stalled_white;                       // empty for a ZFS
  std::optional<Eigen::MatrixXd> witness;      // class member with rank < n, non-ZFS only
  int witness_rank = 0;

  /// A ZFS must give full rank on every sample. A non-ZFS is always
  /// consistent; the witness is extra evidence.
  bool consistent() const { return zfs ? full_rank == trials : true; }
};

/// Member of the qualitative class of g that is uncontrollable from z, built
/// from the stalled white set W: every column sum over W of A vanishes, so
/// the indicator of W is a left null vector of [A B]. Entries are small
/// integers. Returns nullopt if z is a ZFS.
std::optional<Eigen::MatrixXd> uncontrollable_witness(const DiGraph& g, const ControlSet& z);

/// Samples `trials` class members, cycling through Zero, NonZero and Mixed
/// diagonals, each from trial_seed(seed, k), and compares their Kalman rank
/// with the zero forcing verdict.
OracleReport verify_ssc_numeric(const DiGraph& g, const ControlSet& z, int trials, std::uint64_t seed);

struct LtvPiece {
  double start = 0;
  double end = 0;
  DiGraph graph{1};
  Eigen::MatrixXd matrix;
};

/// Piecewise-constant A(t) on [t^0, t^p]. Pieces are contiguous, nonempty,
/// share one node count, and each matrix matches its graph's off-diagonal
/// pattern.
class LtvSchedule {
 public:
  explicit LtvSchedule(std::vector<LtvPiece> pieces);

  const std::vector<LtvPiece>& pieces() const noexcept { return pieces_; }
  int node_count() const noexcept { return pieces_.front().graph.node_count(); }
  double start() const noexcept { return pieces_.front().start; }
  double end() const noexcept { return pieces_.back().end; }
  std::vector<double> breakpoints() const;

  /// True if every piece's graph contains the chain edges of cs.
  bool keeps_chain_edges(const ChainSet& cs) const;

 private:
  std::vector<LtvPiece> pieces_;
};

/// Phi(t_to, t_from) as an ordered product of per-piece matrix exponentials.
/// Throws InputError unless start <= t_from <= t_to <= end.
Eigen::MatrixXd transition_matrix(const LtvSchedule& s, double t_from, double t_to);

/// 16-point Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussRule gauss_legendre(int points);

/// Controllability Gramian over the whole schedule by composite 16-point
/// Gauss-Legendre quadrature, with each piece split into `refinement` equal
/// parts.
Eigen::MatrixXd ltv_gramian(const LtvSchedule& s, const ControlSet& z, int refinement = 1);

int ltv_gramian_rank(const LtvSchedule& s, const ControlSet& z, int refinement = 1);

/// The three-node chain v1 -> v2 -> v3 with T(v_i) = i on [0,10], where the
/// optional entries are nonzero on A11: [0,2]u[4,6], A12: [1,3],
/// A13: [2,5], A22: [7,10], A23: [0,3]u[5,6], A33: [4,7]. Weights are drawn
/// from seed.
LtvSchedule worked_example_schedule(std::uint64_t seed);

/// Random schedule of 1..4 pieces on [0, 2] whose graphs are random class
/// members of tf, with self-loop diagonals.
LtvSchedule random_ltv_schedule(const TimeFunction& tf, std::mt19937_64& rng);

struct LtvFamilyReport {
  int trials = 0;
  int full_rank_with_sources = 0;
  // Trials in which, for every source s, the chain-edge-only member on the
  // same breakpoints is rank deficient from V \ {s}.
  int necessity_witnessed = 0;

  bool consistent() const { return full_rank_with_sources == trials && necessity_witnessed == trials; }
};

/// For each trial builds a random schedule over the class of tf and checks
/// full Gramian rank from the sources, and rank deficiency of a class
/// member from every control set that misses a source.
LtvFamilyReport verify_ltv_family(const TimeFunction& tf, int trials, std::uint64_t seed);

}  // namespace ssc
