#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "ssc/graph.hpp"

namespace ssc {

// A single application of the color-change rule: forcer -> forced.
struct Force {
  Node forcer = 0;
  Node forced = 0;

  friend auto operator<=>(const Force&, const Force&) = default;
};

/// How the forcing process picks the one force performed per iteration when several
/// black nodes could force.
class TieBreakPolicy {
 public:
  enum class Kind { LowestForcerId, LowestForcedId, Explicit };

  static TieBreakPolicy lowest_forcer() { return TieBreakPolicy(Kind::LowestForcerId, {}); }
  static TieBreakPolicy lowest_forced() { return TieBreakPolicy(Kind::LowestForcedId, {}); }
  // The list is replayed verbatim; every force must be legal when applied and
  // the list must run the process to completion.
  static TieBreakPolicy explicit_forces(std::vector<Force> forces) {
    return TieBreakPolicy(Kind::Explicit, std::move(forces));
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<Force>& forces() const noexcept { return forces_; }

 private:
  TieBreakPolicy(Kind kind, std::vector<Force> forces) : kind_(kind), forces_(std::move(forces)) {}

  Kind kind_;
  std::vector<Force> forces_;
};

/// Chronological list of forces together with the forcing times it induces
/// and the maximal forcing chains.
struct ForcingRecord {
  std::vector<Force> forces;
  std::map<Node, int> times;  // T(v); controls get 1, the k-th force (0-based) gives k+2
  ChainSet chains;            // one chain per control node, source first
  int gamma = 1;              // n - m + 1
};

/// Final black set after applying the color-change rule until it no longer
/// applies. Self-loops are ignored: a node is never its own white
/// out-neighbor.
NodeSet derived_set(const DiGraph& g, const NodeSet& initially_black);

/// True iff the derived set of z is the whole node set. By the zero forcing
/// characterisation this is the strong structural controllability verdict.
bool is_zfs(const DiGraph& g, const ControlSet& z);

/// Throws NotZfsError (with the stalled white set) unless z is a ZFS of g.
void require_zfs(const DiGraph& g, const ControlSet& z);

/// Runs the forcing process (one force per iteration) under `policy`.
/// Throws NotZfsError carrying the stalled white set if z is not a ZFS, and
/// InputError for an explicit force list that is not a legal, complete
/// forcing sequence.
ForcingRecord forcing_schedule(const DiGraph& g, const ControlSet& z,
                               const TieBreakPolicy& policy = TieBreakPolicy::lowest_forcer());

/// Depth-first enumeration of distinct chronological force lists, at most
/// `limit` of them. Distinct lists may induce the same chains and times.
std::vector<ForcingRecord> enumerate_forcing_schedules(const DiGraph& g, const ControlSet& z,
                                                       std::size_t limit);

/// Builds the record (times, chains, gamma) for a complete force list.
ForcingRecord make_record(const DiGraph& g, const ControlSet& z, std::vector<Force> forces);

}  // namespace ssc
