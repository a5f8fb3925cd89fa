#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "ssc/ct_model.hpp"
#include "ssc/graph.hpp"
#include "ssc/robustness.hpp"

namespace ssc {

enum class CombineMode { Proc1, Proc2 };

/// Ordered list of 1-based block indices S(1..|S|).
class CombineSequence {
 public:
  CombineSequence() = default;
  explicit CombineSequence(std::vector<int> entries);
  CombineSequence(std::initializer_list<int> entries) : CombineSequence(std::vector<int>(entries)) {}

  const std::vector<int>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  int at(std::size_t k) const { return entries_.at(k - 1); }  // S(k), k is 1-based

  /// How often each of blocks 1..block_count occurs. Throws InputError if
  /// an entry exceeds block_count.
  std::vector<int> counts(int block_count) const;

  /// Throws InputError unless block i occurs exactly repeats[i-1] times.
  void require_counts(const std::vector<int>& repeats) const;
  /// Throws InfeasibleSequence if two equal blocks are adjacent.
  void require_no_adjacent_repeats() const;

  friend bool operator==(const CombineSequence&, const CombineSequence&) = default;
  friend auto operator<=>(const CombineSequence&, const CombineSequence&) = default;

 private:
  std::vector<int> entries_;
};

/// A network with a (C,T) under which it is (C,T)-constructed.
struct Block {
  DiGraph graph;
  TimeFunction tf;
};

/// Global times for block `which`: the j-th occurrence of that block at
/// position k sends every node with local time j+1 to global time k+1.
/// Sources keep time 1. Keys are the block's local node ids. Throws
/// InputError unless the block occurs exactly n - m times.
std::map<Node, int> remap_time(const CombineSequence& seq, int which, const TimeFunction& local);

/// Disjoint union of the blocks plus installed inter-block edges. Block i's
/// local node v becomes offsets[i-1] + v.
struct CombinedNetwork {
  DiGraph graph{1};
  TimeFunction tf;
  EdgeSet inter_edges;
  std::vector<int> offsets;

  Node global_node(int block, Node local) const { return offsets.at(block - 1) + local; }
  // 1-based index of the block holding global node v.
  int block_of(Node v) const;
};

/// Global node offsets: cumulative sizes of the preceding blocks.
std::vector<int> block_offsets(const std::vector<Block>& blocks);

/// Builds the merged chains and times and installs `inter`,
/// given in global ids. Throws InputError for an invalid sequence, a block
/// that is not (C,T)-constructed, or an inter edge inside one block, and
/// RejectedEdge for the first inter edge with T_max(u) < T(v).
CombinedNetwork combine_networks(const std::vector<Block>& blocks, const CombineSequence& seq,
                                 const EdgeSet& inter);

/// Every cross-block pair (u,v) with T_max(u) >= T(v) under the merged time
/// function. bound = perfect_edge_count(n,m) - sum of perfect_edge_count(n_i,m_i).
EdgeSetReport max_inter_edges(const std::vector<Block>& blocks, const CombineSequence& seq);

/// Lexicographic enumeration of sequences in which block i occurs
/// repeats[i-1] times, at most `limit` of them. Proc2 additionally forbids
/// two equal adjacent blocks and throws InfeasibleSequence when the largest
/// count exceeds the others plus one.
std::vector<CombineSequence> enumerate_sequences(const std::vector<int>& repeats, CombineMode mode,
                                                 std::size_t limit);

/// Number of Proc1 sequences, (sum q_i)! / prod q_i!.
std::uint64_t sequence_count(const std::vector<int>& repeats);

struct DagCombination {
  DiGraph graph{1};
  Node control = 1;
  TimeFunction tf;  // one chain through all nodes in time order
  std::vector<int> offsets;
};

/// Combines DAGs into one chain: each DAG's nodes are indexed by topological_order, the j-th
/// occurrence of block i in seq stands for its node with index j, consecutive
/// positions are joined by a spine edge and position k gets time k.
/// Throws CyclicError, InputError on count mismatch, and InfeasibleSequence
/// when equal blocks are adjacent.
DagCombination combine_dags(const std::vector<DiGraph>& dags, const CombineSequence& seq);

}  // namespace ssc
