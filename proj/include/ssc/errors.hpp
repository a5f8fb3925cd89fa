#pragma once

#include <stdexcept>
#include <string>

#include "ssc/graph.hpp"

namespace ssc {

// Base for every domain error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: out-of-range nodes, inconsistent sizes, bad files.
class InputError : public Error {
 public:
  using Error::Error;
};

class CyclicError : public Error {
 public:
  CyclicError() : Error("graph contains a directed cycle") {}
};

// The forcing process stalled before every node turned black.
class NotZfsError : public Error {
 public:
  explicit NotZfsError(NodeSet stalled_white)
      : Error("control set is not a zero forcing set"), white_(std::move(stalled_white)) {}

  const NodeSet& stalled_white() const noexcept { return white_; }

 private:
  NodeSet white_;
};

// An inter-network edge (u,v) violating T_max(u) >= T(v).
class RejectedEdge : public Error {
 public:
  RejectedEdge(Edge e, int tmax_from, int time_to)
      : Error("inter-network edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
              ") rejected: T_max(u)=" + std::to_string(tmax_from) + " < T(v)=" +
              std::to_string(time_to)),
        edge_(e),
        tmax_from_(tmax_from),
        time_to_(time_to) {}

  Edge edge() const noexcept { return edge_; }
  int tmax_from() const noexcept { return tmax_from_; }
  int time_to() const noexcept { return time_to_; }

 private:
  Edge edge_;
  int tmax_from_;
  int time_to_;
};

class InfeasibleSequence : public Error {
 public:
  using Error::Error;
};

}  // namespace ssc
