#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssc/ct_model.hpp"
#include "ssc/errors.hpp"
#include "ssc/graph.hpp"
#include "ssc/numeric_oracle.hpp"
#include "ssc/zero_forcing.hpp"

namespace ssc {

class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column),
        message_(what) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

/// A network with named nodes. Node i of the graph is nodes[i-1].
struct NetworkDocument {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> controls;
  std::vector<std::vector<std::string>> chains;  // empty when no (C,T) is given
  std::vector<std::pair<std::string, int>> times;

  bool has_time_function() const { return !chains.empty(); }

  /// 1-based id of a node name; throws InputError for an unknown name.
  Node id(const std::string& name) const;
  const std::string& name(Node v) const { return nodes.at(v - 1); }

  DiGraph graph() const;
  /// Throws InputError if the document lists no controls.
  ControlSet control_set() const;
  std::optional<TimeFunction> time_function() const;

  std::string format_node_set(const NodeSet& s) const;
  std::string format_edge(Edge e) const;

  friend bool operator==(const NetworkDocument&, const NetworkDocument&) = default;
};

/// Builds a document from ids, naming node v as names[v-1].
NetworkDocument make_document(const std::vector<std::string>& names, const DiGraph& g,
                              const std::optional<ControlSet>& controls = std::nullopt,
                              const std::optional<TimeFunction>& tf = std::nullopt);

/// Parses the line-oriented text format. Throws ParseError.
NetworkDocument parse_document(const std::string& text);

/// Canonical text: every section in fixed order, edges sorted by node id
/// and written "A B", controls sorted, times sorted by node id.
std::string emit_document(const NetworkDocument& doc);

/// The document value emit_document() describes: edges deduplicated and
/// sorted, controls deduplicated and sorted, times sorted.
NetworkDocument normalize(const NetworkDocument& doc);

nlohmann::json to_json(const NetworkDocument& doc);
/// Throws InputError on a malformed object.
NetworkDocument document_from_json(const nlohmann::json& j);

/// Edge list lines "A B", "A -> B" or "A <-> B" with '#' comments, over the
/// names of `doc`. Throws ParseError.
EdgeSet parse_edge_list(const std::string& text, const NetworkDocument& doc);

/// An explicit force list, one "forcer forced" pair per line.
std::vector<Force> parse_force_list(const std::string& text, const NetworkDocument& doc);

/// Schedule description: BREAKPOINTS t0 t1 ... tp followed by
/// "INTERVAL i" blocks listing the optional edges present on interval i.
struct ScheduleDescription {
  std::vector<double> breakpoints;
  std::vector<EdgeSet> optional_edges;  // one per interval
};

ScheduleDescription parse_schedule(const std::string& text, const NetworkDocument& doc);

/// Interval graphs are the chain edges of tf plus the listed optional edges;
/// weights come from seed with self-loop diagonals. Throws InputError if a
/// listed edge is not admissible under tf.
LtvSchedule build_schedule(const ScheduleDescription& desc, const TimeFunction& tf, std::uint64_t seed);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace ssc
