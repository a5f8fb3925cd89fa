#include "ssc/document.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ssc {

namespace {

struct Token {
  std::string text;
  int column = 0;
};

struct Line {
  int number = 0;
  std::vector<Token> tokens;
};

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '\'';
}

// Splits text into whitespace-separated tokens, dropping '#' comments and
// blank lines.
std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

void require_name(const Line& line, const Token& t) {
  const bool ok = !t.text.empty() && t.text != "->" && t.text != "<->" &&
                  std::all_of(t.text.begin(), t.text.end(), name_char);
  if (!ok) throw ParseError(line.number, t.column, "invalid node name '" + t.text + "'");
}

struct NameIndex {
  std::map<std::string, Node> ids;

  explicit NameIndex(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i) ids.emplace(names[i], static_cast<Node>(i) + 1);
  }

  Node resolve(const Line& line, const Token& t) const {
    auto it = ids.find(t.text);
    if (it == ids.end()) throw ParseError(line.number, t.column, "unknown node '" + t.text + "'");
    return it->second;
  }
};

// One edge line: "A B", "A -> B" or "A <-> B". Returns the directed pairs.
std::vector<std::pair<Token, Token>> edge_line(const Line& line) {
  const auto& tk = line.tokens;
  if (tk.size() == 2) {
    require_name(line, tk[0]);
    require_name(line, tk[1]);
    return {{tk[0], tk[1]}};
  }
  if (tk.size() == 3 && (tk[1].text == "->" || tk[1].text == "<->")) {
    require_name(line, tk[0]);
    require_name(line, tk[2]);
    if (tk[1].text == "->") return {{tk[0], tk[2]}};
    return {{tk[0], tk[2]}, {tk[2], tk[0]}};
  }
  const Token& at = tk.size() >= 2 ? tk[1] : tk[0];
  throw ParseError(line.number, at.column, "expected 'A B', 'A -> B' or 'A <-> B'");
}

int parse_int(const Line& line, const Token& t) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw ParseError(line.number, t.column, "expected an integer, got '" + t.text + "'");
  }
  return value;
}

double parse_double(const Line& line, const Token& t) {
  try {
    std::size_t used = 0;
    double v = std::stod(t.text, &used);
    if (used == t.text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(line.number, t.column, "expected a number, got '" + t.text + "'");
}

const std::set<std::string> kSections{"NODES", "EDGES", "CONTROLS", "CHAINS", "TIMES"};

}  // namespace

Node NetworkDocument::id(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  if (it == nodes.end()) throw InputError("unknown node '" + name + "'");
  return static_cast<Node>(it - nodes.begin()) + 1;
}

DiGraph NetworkDocument::graph() const {
  if (nodes.empty()) throw InputError("document declares no nodes");
  EdgeSet es;
  for (const auto& [a, b] : edges) es.insert({id(a), id(b)});
  return DiGraph(static_cast<int>(nodes.size()), std::move(es));
}

ControlSet NetworkDocument::control_set() const {
  if (controls.empty()) throw InputError("document lists no control nodes");
  NodeSet s;
  for (const auto& c : controls) s.insert(id(c));
  return ControlSet(std::move(s));
}

std::optional<TimeFunction> NetworkDocument::time_function() const {
  if (chains.empty()) return std::nullopt;
  std::vector<Chain> cs;
  for (const auto& chain : chains) {
    std::vector<Node> ids;
    for (const auto& v : chain) ids.push_back(id(v));
    cs.emplace_back(std::move(ids));
  }
  std::map<Node, int> t;
  for (const auto& [v, time] : times) t[id(v)] = time;
  return TimeFunction::checked(ChainSet(std::move(cs)), std::move(t));
}

std::string NetworkDocument::format_node_set(const NodeSet& s) const {
  std::string out = "{";
  for (Node v : s) {
    if (out.size() > 1) out += ",";
    out += name(v);
  }
  return out + "}";
}

std::string NetworkDocument::format_edge(Edge e) const { return "(" + name(e.from) + "," + name(e.to) + ")"; }

NetworkDocument make_document(const std::vector<std::string>& names, const DiGraph& g,
                              const std::optional<ControlSet>& controls, const std::optional<TimeFunction>& tf) {
  if (static_cast<int>(names.size()) != g.node_count()) throw InputError("one name per node is required");
  NetworkDocument doc;
  doc.nodes = names;
  for (const Edge& e : g.edges()) doc.edges.emplace_back(names[e.from - 1], names[e.to - 1]);
  if (controls) {
    for (Node v : *controls) doc.controls.push_back(names[v - 1]);
  }
  if (tf) {
    for (const Chain& c : tf->chains().chains()) {
      std::vector<std::string> chain;
      for (Node v : c.nodes()) chain.push_back(names[v - 1]);
      doc.chains.push_back(std::move(chain));
    }
    for (const auto& [v, t] : tf->times()) doc.times.emplace_back(names[v - 1], t);
  }
  return doc;
}

NetworkDocument parse_document(const std::string& text) {
  const auto lines = tokenize(text);
  std::string section;
  const Line* nodes_line = nullptr;
  std::vector<std::pair<const Line*, Token>> node_tokens;
  std::vector<std::pair<const Line*, std::pair<Token, Token>>> edge_tokens;
  std::vector<std::pair<const Line*, Token>> control_tokens;
  std::vector<const Line*> chain_lines;
  std::vector<const Line*> time_lines;
  const Line* times_header = nullptr;

  for (const Line& line : lines) {
    const Token& first = line.tokens.front();
    if (kSections.contains(first.text)) {
      if (line.tokens.size() > 1) {
        throw ParseError(line.number, line.tokens[1].column, "unexpected text after section header");
      }
      section = first.text;
      if (section == "NODES" && !nodes_line) nodes_line = &line;
      if (section == "TIMES" && !times_header) times_header = &line;
      continue;
    }
    if (section.empty()) throw ParseError(line.number, first.column, "expected a section header");
    if (section == "NODES") {
      for (const Token& t : line.tokens) {
        require_name(line, t);
        node_tokens.emplace_back(&line, t);
      }
    } else if (section == "EDGES") {
      for (auto& pair : edge_line(line)) edge_tokens.emplace_back(&line, pair);
    } else if (section == "CONTROLS") {
      for (const Token& t : line.tokens) {
        require_name(line, t);
        control_tokens.emplace_back(&line, t);
      }
    } else if (section == "CHAINS") {
      chain_lines.push_back(&line);
    } else {
      time_lines.push_back(&line);
    }
  }

  NetworkDocument doc;
  std::set<std::string> seen;
  for (const auto& [line, t] : node_tokens) {
    if (!seen.insert(t.text).second) throw ParseError(line->number, t.column, "duplicate node '" + t.text + "'");
    doc.nodes.push_back(t.text);
  }
  if (doc.nodes.empty()) throw ParseError(nodes_line ? nodes_line->number : 1, 1, "no nodes declared");
  const NameIndex index(doc.nodes);

  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const auto& [line, pair] : edge_tokens) {
    index.resolve(*line, pair.first);
    index.resolve(*line, pair.second);
    if (seen_edges.insert({pair.first.text, pair.second.text}).second) {
      doc.edges.emplace_back(pair.first.text, pair.second.text);
    }
  }
  std::set<std::string> seen_controls;
  for (const auto& [line, t] : control_tokens) {
    index.resolve(*line, t);
    if (seen_controls.insert(t.text).second) doc.controls.push_back(t.text);
  }
  for (const Line* line : chain_lines) {
    std::vector<std::string> chain;
    for (const Token& t : line->tokens) {
      if (t.text == "->") continue;
      require_name(*line, t);
      index.resolve(*line, t);
      chain.push_back(t.text);
    }
    if (chain.empty()) throw ParseError(line->number, 1, "empty chain");
    doc.chains.push_back(std::move(chain));
  }
  for (const Line* line : time_lines) {
    if (line->tokens.size() != 2) {
      throw ParseError(line->number, line->tokens.front().column, "expected 'node time'");
    }
    index.resolve(*line, line->tokens[0]);
    doc.times.emplace_back(line->tokens[0].text, parse_int(*line, line->tokens[1]));
  }

  if (doc.chains.empty() != doc.times.empty()) {
    const int at = !time_lines.empty() ? time_lines.front()->number
                   : !chain_lines.empty() ? chain_lines.front()->number
                                          : 1;
    throw ParseError(at, 1, "CHAINS and TIMES must be given together");
  }
  if (doc.has_time_function()) {
    try {
      doc.time_function();
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(times_header ? times_header->number : chain_lines.front()->number, 1, e.what());
    }
  }
  return doc;
}

NetworkDocument normalize(const NetworkDocument& doc) {
  NetworkDocument out;
  out.nodes = doc.nodes;
  std::set<Edge> edges;
  for (const auto& [a, b] : doc.edges) edges.insert({doc.id(a), doc.id(b)});
  for (const Edge& e : edges) out.edges.emplace_back(doc.name(e.from), doc.name(e.to));
  NodeSet controls;
  for (const auto& c : doc.controls) controls.insert(doc.id(c));
  for (Node v : controls) out.controls.push_back(doc.name(v));
  out.chains = doc.chains;
  std::map<Node, int> times;
  for (const auto& [v, t] : doc.times) times[doc.id(v)] = t;
  for (const auto& [v, t] : times) out.times.emplace_back(doc.name(v), t);
  return out;
}

std::string emit_document(const NetworkDocument& doc) {
  const NetworkDocument d = normalize(doc);
  std::ostringstream out;
  out << "NODES\n";
  for (std::size_t i = 0; i < d.nodes.size(); ++i) out << (i ? " " : "") << d.nodes[i];
  out << "\nEDGES\n";
  for (const auto& [a, b] : d.edges) out << a << ' ' << b << '\n';
  if (!d.controls.empty()) {
    out << "CONTROLS\n";
    for (std::size_t i = 0; i < d.controls.size(); ++i) out << (i ? " " : "") << d.controls[i];
    out << '\n';
  }
  if (d.has_time_function()) {
    out << "CHAINS\n";
    for (const auto& chain : d.chains) {
      for (std::size_t i = 0; i < chain.size(); ++i) out << (i ? " " : "") << chain[i];
      out << '\n';
    }
    out << "TIMES\n";
    for (const auto& [v, t] : d.times) out << v << ' ' << t << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const NetworkDocument& doc) {
  nlohmann::json j;
  j["nodes"] = doc.nodes;
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : doc.edges) j["edges"].push_back({a, b});
  j["controls"] = doc.controls;
  if (doc.has_time_function()) {
    j["chains"] = doc.chains;
    j["times"] = nlohmann::json::object();
    for (const auto& [v, t] : doc.times) j["times"][v] = t;
  }
  return j;
}

NetworkDocument document_from_json(const nlohmann::json& j) {
  try {
    NetworkDocument doc;
    doc.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& e : j.at("edges")) {
      doc.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
    }
    if (j.contains("controls")) doc.controls = j.at("controls").get<std::vector<std::string>>();
    if (j.contains("chains")) {
      doc.chains = j.at("chains").get<std::vector<std::vector<std::string>>>();
      for (const auto& [v, t] : j.at("times").items()) doc.times.emplace_back(v, t.get<int>());
    }
    // Reuse the text parser's validation.
    return parse_document(emit_document(doc));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed network JSON: ") + e.what());
  }
}

EdgeSet parse_edge_list(const std::string& text, const NetworkDocument& doc) {
  const NameIndex index(doc.nodes);
  EdgeSet out;
  for (const Line& line : tokenize(text)) {
    for (const auto& [a, b] : edge_line(line)) out.insert({index.resolve(line, a), index.resolve(line, b)});
  }
  return out;
}

std::vector<Force> parse_force_list(const std::string& text, const NetworkDocument& doc) {
  const NameIndex index(doc.nodes);
  std::vector<Force> out;
  for (const Line& line : tokenize(text)) {
    const auto pairs = edge_line(line);
    if (pairs.size() != 1) throw ParseError(line.number, line.tokens[1].column, "a force has one direction");
    out.push_back({index.resolve(line, pairs[0].first), index.resolve(line, pairs[0].second)});
  }
  return out;
}

ScheduleDescription parse_schedule(const std::string& text, const NetworkDocument& doc) {
  const NameIndex index(doc.nodes);
  ScheduleDescription desc;
  int current = 0;
  bool have_breakpoints = false;
  std::vector<bool> listed;
  for (const Line& line : tokenize(text)) {
    const Token& first = line.tokens.front();
    if (first.text == "BREAKPOINTS") {
      if (have_breakpoints) throw ParseError(line.number, first.column, "BREAKPOINTS given twice");
      have_breakpoints = true;
      for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const double t = parse_double(line, line.tokens[i]);
        if (!desc.breakpoints.empty() && !(t > desc.breakpoints.back())) {
          throw ParseError(line.number, line.tokens[i].column, "breakpoints must increase strictly");
        }
        desc.breakpoints.push_back(t);
      }
      if (desc.breakpoints.size() < 2) throw ParseError(line.number, first.column, "at least two breakpoints are required");
      desc.optional_edges.assign(desc.breakpoints.size() - 1, {});
      listed.assign(desc.optional_edges.size(), false);
      continue;
    }
    if (first.text == "INTERVAL") {
      if (!have_breakpoints) throw ParseError(line.number, first.column, "INTERVAL before BREAKPOINTS");
      if (line.tokens.size() != 2) throw ParseError(line.number, first.column, "expected 'INTERVAL i'");
      current = parse_int(line, line.tokens[1]);
      if (current < 1 || current > static_cast<int>(desc.optional_edges.size())) {
        throw ParseError(line.number, line.tokens[1].column,
                         "interval index outside [1," + std::to_string(desc.optional_edges.size()) + "]");
      }
      if (listed[current - 1]) throw ParseError(line.number, line.tokens[1].column, "interval listed twice");
      listed[current - 1] = true;
      continue;
    }
    if (current == 0) throw ParseError(line.number, first.column, "edge outside an INTERVAL block");
    for (const auto& [a, b] : edge_line(line)) {
      desc.optional_edges[current - 1].insert({index.resolve(line, a), index.resolve(line, b)});
    }
  }
  if (!have_breakpoints) throw ParseError(1, 1, "schedule has no BREAKPOINTS line");
  return desc;
}

LtvSchedule build_schedule(const ScheduleDescription& desc, const TimeFunction& tf, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = tf.node_count();
  std::vector<LtvPiece> pieces;
  for (std::size_t i = 0; i < desc.optional_edges.size(); ++i) {
    EdgeSet edges = tf.chains().edges();
    for (const Edge& e : desc.optional_edges[i]) {
      if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) throw InputError("schedule edge outside the network");
      if (!is_admissible_edge(tf, e)) {
        throw InputError("interval " + std::to_string(i + 1) + " edge (" + std::to_string(e.from) + "," +
                         std::to_string(e.to) + ") has T_max(u)=" + std::to_string(tf.tmax(e.from)) +
                         " < T(v)=" + std::to_string(tf.time(e.to)));
      }
      edges.insert(e);
    }
    DiGraph g(n, std::move(edges));
    auto sample = sample_qualitative(g, rng(), DiagMode::Loops);
    pieces.push_back({desc.breakpoints[i], desc.breakpoints[i + 1], std::move(g), std::move(sample.matrix)});
  }
  return LtvSchedule(std::move(pieces));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace ssc
