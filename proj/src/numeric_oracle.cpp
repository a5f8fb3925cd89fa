#include "ssc/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "ssc/errors.hpp"
#include "ssc/parallel.hpp"
#include "ssc/zero_forcing.hpp"

namespace ssc {

namespace {

double draw_weight(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> magnitude(0.1, 2.0);
  std::bernoulli_distribution negative(0.5);
  const double w = magnitude(rng);
  return negative(rng) ? -w : w;
}

}  // namespace

WeightSample sample_qualitative(const DiGraph& g, std::uint64_t seed, DiagMode mode) {
  const int n = g.node_count();
  std::mt19937_64 rng(seed);
  WeightSample s{Eigen::MatrixXd::Zero(n, n), seed, mode};
  for (const Edge& e : g.edges()) {
    if (e.from != e.to) s.matrix(e.to - 1, e.from - 1) = draw_weight(rng);
  }
  std::bernoulli_distribution coin(0.5);
  for (Node v = 1; v <= n; ++v) {
    bool nonzero = false;
    switch (mode) {
      case DiagMode::Zero: nonzero = false; break;
      case DiagMode::NonZero: nonzero = true; break;
      case DiagMode::Mixed: nonzero = coin(rng); break;
      case DiagMode::Loops: nonzero = g.has_edge(v, v); break;
    }
    if (nonzero) s.matrix(v - 1, v - 1) = draw_weight(rng);
  }
  return s;
}

Eigen::MatrixXd input_matrix(int n, const ControlSet& z) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, static_cast<Eigen::Index>(z.size()));
  Eigen::Index col = 0;
  for (Node v : z) {
    if (v > n) throw InputError("control node " + std::to_string(v) + " outside the system");
    b(v - 1, col++) = 1.0;
  }
  return b;
}

int numerical_rank(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double tol =
      static_cast<double>(m.rows()) * std::numeric_limits<double>::epsilon() * sv(0) * 1e3;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) >= tol) ++rank;
  }
  return rank;
}

int kalman_rank(const Eigen::MatrixXd& a, const ControlSet& z) {
  if (a.rows() != a.cols()) throw InputError("system matrix must be square");
  const auto n = a.rows();
  const Eigen::MatrixXd b = input_matrix(static_cast<int>(n), z);
  Eigen::MatrixXd k(n, n * b.cols());
  Eigen::MatrixXd block = b;
  for (Eigen::Index i = 0; i < n; ++i) {
    k.middleCols(i * b.cols(), b.cols()) = block;
    block = a * block;
  }
  return numerical_rank(k);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a combination of both inputs.
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::optional<Eigen::MatrixXd> uncontrollable_witness(const DiGraph& g, const ControlSet& z) {
  z.require_within(g);
  const int n = g.node_count();
  const NodeSet black = derived_set(g, z.nodes());
  if (static_cast<int>(black.size()) == n) return std::nullopt;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    if (e.from != e.to) a(e.to - 1, e.from - 1) = 1.0;
  }
  // A stalled black node has zero or at least two white out-neighbors; in
  // the latter case weights 1,..,1,-(k-1) cancel over the white set.
  for (Node u : black) {
    std::vector<Node> white;
    for (Node w : g.out_neighbors(u)) {
      if (w != u && !black.contains(w)) white.push_back(w);
    }
    if (white.size() < 2) continue;
    a(white.back() - 1, u - 1) = -static_cast<double>(white.size() - 1);
  }
  // White columns cancel through the free diagonal.
  for (Node j = 1; j <= n; ++j) {
    if (black.contains(j)) continue;
    double sum = 0;
    for (Node i = 1; i <= n; ++i) {
      if (i != j && !black.contains(i)) sum += a(i - 1, j - 1);
    }
    a(j - 1, j - 1) = -sum;
  }
  return a;
}

OracleReport verify_ssc_numeric(const DiGraph& g, const ControlSet& z, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("at least one trial is required");
  z.require_within(g);
  const int n = g.node_count();
  OracleReport report;
  report.trials = trials;
  const NodeSet black = derived_set(g, z.nodes());
  report.zfs = static_cast<int>(black.size()) == n;
  for (Node v = 1; v <= n; ++v) {
    if (!black.contains(v)) report.stalled_white.insert(v);
  }

  static constexpr DiagMode kModes[] = {DiagMode::Zero, DiagMode::NonZero, DiagMode::Mixed};
  std::vector<int> ranks(trials);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
    const auto s = sample_qualitative(g, trial_seed(seed, k), kModes[k % 3]);
    ranks[k] = kalman_rank(s.matrix, z);
  });
  for (int k = 0; k < trials; ++k) {
    if (ranks[k] == n) {
      ++report.full_rank;
    } else {
      report.deficient_seeds.push_back(trial_seed(seed, k));
    }
  }
  if (!report.zfs) {
    report.witness = uncontrollable_witness(g, z);
    report.witness_rank = kalman_rank(*report.witness, z);
  }
  return report;
}

LtvSchedule::LtvSchedule(std::vector<LtvPiece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw InputError("a schedule needs at least one interval");
  const int n = pieces_.front().graph.node_count();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const LtvPiece& p = pieces_[i];
    const std::string where = "interval " + std::to_string(i + 1);
    if (!(p.start < p.end)) throw InputError(where + " is empty or reversed");
    if (i > 0 && p.start != pieces_[i - 1].end) throw InputError(where + " does not start where the previous ends");
    if (p.graph.node_count() != n) throw InputError(where + " has a different node count");
    if (p.matrix.rows() != n || p.matrix.cols() != n) throw InputError(where + " matrix has the wrong size");
    for (Node u = 1; u <= n; ++u) {
      for (Node v = 1; v <= n; ++v) {
        if (u == v) continue;
        if ((p.matrix(v - 1, u - 1) != 0.0) != p.graph.has_edge(u, v)) {
          throw InputError(where + " matrix does not match its graph at edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
        }
      }
    }
  }
}

std::vector<double> LtvSchedule::breakpoints() const {
  std::vector<double> out{pieces_.front().start};
  for (const LtvPiece& p : pieces_) out.push_back(p.end);
  return out;
}

bool LtvSchedule::keeps_chain_edges(const ChainSet& cs) const {
  const EdgeSet required = cs.edges();
  return std::all_of(pieces_.begin(), pieces_.end(), [&](const LtvPiece& p) {
    return std::all_of(required.begin(), required.end(), [&](const Edge& e) { return p.graph.has_edge(e.from, e.to); });
  });
}

Eigen::MatrixXd transition_matrix(const LtvSchedule& s, double t_from, double t_to) {
  if (!(s.start() <= t_from && t_from <= t_to && t_to <= s.end())) {
    throw InputError("transition times must satisfy start <= from <= to <= end");
  }
  const int n = s.node_count();
  Eigen::MatrixXd phi = Eigen::MatrixXd::Identity(n, n);
  for (const LtvPiece& p : s.pieces()) {
    const double a = std::max(p.start, t_from);
    const double b = std::min(p.end, t_to);
    if (b <= a) continue;
    phi = Eigen::MatrixXd((p.matrix * (b - a)).exp()) * phi;
  }
  return phi;
}

GaussRule gauss_legendre(int points) {
  // Golub-Welsch: eigenvalues of the Jacobi matrix are the nodes.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  GaussRule rule;
  rule.nodes = eig.eigenvalues();
  rule.weights = 2.0 * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

Eigen::MatrixXd ltv_gramian(const LtvSchedule& s, const ControlSet& z, int refinement) {
  if (refinement < 1) throw InputError("refinement must be at least 1");
  static const GaussRule rule = gauss_legendre(16);
  const int n = s.node_count();
  const Eigen::MatrixXd b = input_matrix(n, z);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  // Walk backwards from t^p carrying P = Phi(t^p, end of current part).
  Eigen::MatrixXd carry = Eigen::MatrixXd::Identity(n, n);
  const auto& pieces = s.pieces();
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it) {
    const double h = (it->end - it->start) / refinement;
    const Eigen::MatrixXd step = (it->matrix * h).exp();
    for (int r = refinement - 1; r >= 0; --r) {
      const double lo = it->start + r * h;
      const double hi = lo + h;
      Eigen::MatrixXd local = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
        const double tau = 0.5 * (lo + hi) + 0.5 * h * rule.nodes(q);
        const Eigen::MatrixXd m = Eigen::MatrixXd((it->matrix * (hi - tau)).exp()) * b;
        local += (0.5 * h * rule.weights(q)) * (m * m.transpose());
      }
      gram += carry * local * carry.transpose();
      carry = carry * step;
    }
  }
  return 0.5 * (gram + gram.transpose());
}

int ltv_gramian_rank(const LtvSchedule& s, const ControlSet& z, int refinement) {
  return numerical_rank(ltv_gramian(s, z, refinement));
}

LtvSchedule worked_example_schedule(std::uint64_t seed) {
  const std::vector<double> cuts{0, 1, 2, 3, 4, 5, 6, 7, 10};
  auto on = [](double lo, double hi, double a, double b) { return lo >= a && hi <= b; };
  std::mt19937_64 rng(seed);
  std::vector<LtvPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    EdgeSet edges{{1, 2}, {2, 3}};
    if (on(lo, hi, 0, 2) || on(lo, hi, 4, 6)) edges.insert({1, 1});
    if (on(lo, hi, 1, 3)) edges.insert({2, 1});
    if (on(lo, hi, 2, 5)) edges.insert({3, 1});
    if (on(lo, hi, 7, 10)) edges.insert({2, 2});
    if (on(lo, hi, 0, 3) || on(lo, hi, 5, 6)) edges.insert({3, 2});
    if (on(lo, hi, 4, 7)) edges.insert({3, 3});
    DiGraph g(3, std::move(edges));
    auto sample = sample_qualitative(g, rng(), DiagMode::Loops);
    pieces.push_back({lo, hi, std::move(g), std::move(sample.matrix)});
  }
  return LtvSchedule(std::move(pieces));
}

namespace {

// Long horizons let exp(A t) grow until the relative rank threshold hides
// real directions of the Gramian.
constexpr double kRandomHorizon = 2.0;

std::vector<double> random_breakpoints(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> piece_count(1, 4);
  std::uniform_real_distribution<double> where(0.05 * kRandomHorizon, 0.95 * kRandomHorizon);
  const int p = piece_count(rng);
  std::vector<double> cuts{0.0, kRandomHorizon};
  while (static_cast<int>(cuts.size()) < p + 1) {
    const double t = where(rng);
    const bool clear =
        std::all_of(cuts.begin(), cuts.end(), [&](double c) { return std::abs(c - t) > 0.025 * kRandomHorizon; });
    if (clear) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  return cuts;
}

LtvSchedule schedule_on(const std::vector<double>& cuts, const TimeFunction& tf, std::mt19937_64& rng,
                        bool chain_edges_only) {
  std::vector<LtvPiece> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    DiGraph g = chain_edges_only ? DiGraph(tf.node_count(), tf.chains().edges()) : sample_class_member(tf, rng);
    auto sample = sample_qualitative(g, rng(), DiagMode::Loops);
    pieces.push_back({cuts[i], cuts[i + 1], std::move(g), std::move(sample.matrix)});
  }
  return LtvSchedule(std::move(pieces));
}

}  // namespace

LtvSchedule random_ltv_schedule(const TimeFunction& tf, std::mt19937_64& rng) {
  return schedule_on(random_breakpoints(rng), tf, rng, false);
}

LtvFamilyReport verify_ltv_family(const TimeFunction& tf, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("at least one trial is required");
  const auto problems = validate_time_function(tf);
  if (!problems.empty()) throw InputError("invalid time function: " + problems.front());
  const int n = tf.node_count();
  const NodeSet sources = tf.chains().sources();

  std::vector<char> full(trials, 0);
  std::vector<char> necessity(trials, 0);
  parallel_for(static_cast<std::size_t>(trials), [&](std::size_t k) {
    std::mt19937_64 rng(trial_seed(seed, k));
    const auto cuts = random_breakpoints(rng);
    const LtvSchedule member = schedule_on(cuts, tf, rng, false);
    full[k] = ltv_gramian_rank(member, ControlSet(sources)) == n;

    const LtvSchedule bare = schedule_on(cuts, tf, rng, true);
    bool all_deficient = true;
    for (Node s : sources) {
      NodeSet others;
      for (Node v = 1; v <= n; ++v) {
        if (v != s) others.insert(v);
      }
      // With no input at all the rank is 0.
      if (others.empty()) continue;
      if (ltv_gramian_rank(bare, ControlSet(others)) == n) all_deficient = false;
    }
    necessity[k] = all_deficient;
  });

  LtvFamilyReport report;
  report.trials = trials;
  report.full_rank_with_sources = static_cast<int>(std::count(full.begin(), full.end(), 1));
  report.necessity_witnessed = static_cast<int>(std::count(necessity.begin(), necessity.end(), 1));
  return report;
}

}  // namespace ssc
