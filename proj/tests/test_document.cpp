#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "ssc/document.hpp"

using namespace ssc;

namespace {

const char* kTwoChainDoc = R"(# two chains
NODES
v1 v2 v3
u1 u2
EDGES
v1 -> v2
v2 -> v3
u1 -> u2
v1 <-> u1   # both directions
u2 v3
CONTROLS
v1 u1
CHAINS
v1 -> v2 -> v3
u1 u2
TIMES
v1 1
u1 1
v2 2
u2 3
v3 4
)";

std::string random_name(std::mt19937_64& rng) {
  static const std::string alphabet = "abcxyzABC019_.-'";
  std::uniform_int_distribution<std::size_t> len(1, 5);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::string s;
  const std::size_t l = len(rng);
  while (s.size() < l) s += alphabet[pick(rng)];
  return s;
}

// Random document with duplicate edges and controls and, half of the time,
// a valid time function.
NetworkDocument random_document(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(1, 7);
  const int n = pick_n(rng);
  std::set<std::string> used{"NODES", "EDGES", "CONTROLS", "CHAINS", "TIMES"};
  std::vector<std::string> names;
  while (static_cast<int>(names.size()) < n) {
    std::string s = random_name(rng);
    if (used.insert(s).second) names.push_back(s);
  }
  NetworkDocument doc;
  doc.nodes = names;
  std::uniform_int_distribution<int> node(0, n - 1);
  std::uniform_int_distribution<int> count(0, 2 * n);
  for (int k = count(rng); k > 0; --k) doc.edges.emplace_back(names[node(rng)], names[node(rng)]);
  std::uniform_int_distribution<int> ctl(1, 3);
  for (int k = ctl(rng); k > 0; --k) doc.controls.push_back(names[node(rng)]);
  if (std::bernoulli_distribution(0.5)(rng)) {
    std::uniform_int_distribution<int> pick_m(1, n);
    const TimeFunction tf = random_time_function(n, pick_m(rng), rng);
    for (const Chain& c : tf.chains().chains()) {
      std::vector<std::string> chain;
      for (Node v : c.nodes()) chain.push_back(names[v - 1]);
      doc.chains.push_back(chain);
    }
    std::vector<std::pair<std::string, int>> times;
    for (const auto& [v, t] : tf.times()) times.emplace_back(names[v - 1], t);
    std::shuffle(times.begin(), times.end(), rng);
    doc.times = times;
  }
  return doc;
}

void check_parse_error(const std::string& text, int line, int column) {
  try {
    parse_document(text);
    FAIL("expected ParseError for:\n" << text);
  } catch (const ParseError& e) {
    CHECK(e.line() == line);
    CHECK(e.column() == column);
  }
}

}  // namespace

TEST_CASE("parse_document") {
  const NetworkDocument d = parse_document(kTwoChainDoc);
  CHECK(d.nodes == std::vector<std::string>{"v1", "v2", "v3", "u1", "u2"});
  CHECK(d.graph().edges() == EdgeSet{{1, 2}, {2, 3}, {4, 5}, {1, 4}, {4, 1}, {5, 3}});
  CHECK(d.control_set() == ControlSet{1, 4});
  const auto tf = d.time_function();
  REQUIRE(tf.has_value());
  CHECK(*tf == oracle::two_chain_tf());
  CHECK(d.format_node_set({1, 5}) == "{v1,u2}");
  CHECK(d.format_edge({4, 1}) == "(u1,v1)");
  CHECK(d.id("u2") == 5);
  CHECK_THROWS_AS(d.id("w"), InputError);
}

TEST_CASE("documents without controls or time function") {
  const NetworkDocument d = parse_document("NODES\na b\nEDGES\n");
  CHECK(d.graph().edge_count() == 0);
  CHECK_THROWS_AS(d.control_set(), InputError);
  CHECK_FALSE(d.time_function().has_value());
}

TEST_CASE("parse errors carry line and column") {
  check_parse_error("a b\n", 1, 1);
  check_parse_error("NODES\na b\nEDGES\na c\n", 4, 3);
  check_parse_error("NODES\na b\nEDGES\na -> b -> a\n", 4, 3);
  check_parse_error("NODES\na a\n", 2, 3);
  check_parse_error("NODES\na b$\n", 2, 3);
  check_parse_error("NODES extra\n", 1, 7);
  check_parse_error("NODES\n", 1, 1);
  check_parse_error("NODES\na b\nCHAINS\na b\n", 4, 1);
  check_parse_error("NODES\na b\nCHAINS\na b\nTIMES\na 1\nb x\n", 7, 3);
  check_parse_error("NODES\na b\nCHAINS\na b\nTIMES\na 1\n", 5, 1);
  // Valid syntax but an invalid time function.
  check_parse_error("NODES\na b\nEDGES\na b\nCHAINS\na b\nTIMES\na 1\nb 5\n", 7, 1);
  check_parse_error("NODES\na\nCONTROLS\nz\n", 4, 1);
}

TEST_CASE("emit_document is canonical") {
  const NetworkDocument d = parse_document(kTwoChainDoc);
  const std::string text = emit_document(d);
  CHECK(text.rfind("NODES\nv1 v2 v3 u1 u2\nEDGES\nv1 v2\nv1 u1\n", 0) == 0);
  CHECK(emit_document(parse_document(text)) == text);
}

TEST_CASE("property: parse(emit(d)) == normalize(d)") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 500; ++trial) {
    const NetworkDocument d = random_document(rng);
    const NetworkDocument n = normalize(d);
    CHECK(parse_document(emit_document(d)) == n);
    CHECK(normalize(n) == n);
    CHECK(document_from_json(to_json(d)) == n);
    CHECK(n.graph() == d.graph());
  }
}

TEST_CASE("property: every edge spelling parses to the same graph") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const NetworkDocument d = random_document(rng);
    std::ostringstream text;
    text << "NODES\n";
    for (const auto& v : d.nodes) text << "  " << v << "\n";
    text << "EDGES\n";
    std::uniform_int_distribution<int> style(0, 2);
    EdgeSet expected;
    for (const auto& [a, b] : d.edges) {
      const int s = style(rng);
      if (s == 0) text << a << " " << b << "\n";
      if (s == 1) text << a << " -> " << b << "   # comment\n";
      if (s == 2) {
        text << a << " <-> " << b << "\n";
        expected.insert({d.id(b), d.id(a)});
      }
      expected.insert({d.id(a), d.id(b)});
    }
    CHECK(parse_document(text.str()).graph().edges() == expected);
  }
}

TEST_CASE("JSON mirror") {
  const NetworkDocument d = parse_document(kTwoChainDoc);
  const nlohmann::json j = to_json(d);
  CHECK(j.at("nodes").size() == 5);
  CHECK(j.at("times").at("v3") == 4);
  CHECK(document_from_json(nlohmann::json::parse(j.dump())) == normalize(d));
  CHECK_THROWS_AS(document_from_json(nlohmann::json{{"edges", nlohmann::json::array()}}), InputError);
  CHECK_THROWS_AS(document_from_json(nlohmann::json{{"nodes", {"a"}}, {"edges", {{"a", "q"}}}}), InputError);
}

TEST_CASE("edge and force lists") {
  const NetworkDocument d = parse_document(kTwoChainDoc);
  CHECK(parse_edge_list("v1 u2\nv3 <-> u1 # x\n\n", d) == EdgeSet{{1, 5}, {3, 4}, {4, 3}});
  CHECK_THROWS_AS(parse_edge_list("v1 q\n", d), ParseError);
  CHECK(parse_force_list("v1 -> v2\nu1 u2\n", d) == std::vector<Force>{{1, 2}, {4, 5}});
  CHECK_THROWS_AS(parse_force_list("v1 <-> v2\n", d), ParseError);
}

TEST_CASE("schedule descriptions") {
  const NetworkDocument d = parse_document(kTwoChainDoc);
  const ScheduleDescription s = parse_schedule("BREAKPOINTS 0 1.5 3\nINTERVAL 2\nv2 v1\nv3 v3\n", d);
  CHECK(s.breakpoints == std::vector<double>{0, 1.5, 3});
  REQUIRE(s.optional_edges.size() == 2);
  CHECK(s.optional_edges[0].empty());
  CHECK(s.optional_edges[1] == EdgeSet{{2, 1}, {3, 3}});

  const LtvSchedule built = build_schedule(s, *d.time_function(), 3);
  CHECK(built.pieces().size() == 2);
  CHECK(built.pieces()[1].graph.edges() == EdgeSet{{1, 2}, {2, 3}, {4, 5}, {2, 1}, {3, 3}});
  CHECK(built.keeps_chain_edges(d.time_function()->chains()));

  // T_max(v1) = 1 < T(v3) = 4.
  const ScheduleDescription bad = parse_schedule("BREAKPOINTS 0 1\nINTERVAL 1\nv1 v3\n", d);
  CHECK_THROWS_AS(build_schedule(bad, *d.time_function(), 3), InputError);

  CHECK_THROWS_AS(parse_schedule("INTERVAL 1\n", d), ParseError);
  CHECK_THROWS_AS(parse_schedule("BREAKPOINTS 0\n", d), ParseError);
  CHECK_THROWS_AS(parse_schedule("BREAKPOINTS 0 2 1\n", d), ParseError);
  CHECK_THROWS_AS(parse_schedule("BREAKPOINTS 0 1\nINTERVAL 2\n", d), ParseError);
  CHECK_THROWS_AS(parse_schedule("BREAKPOINTS 0 1\nv1 v2\n", d), ParseError);
  CHECK_THROWS_AS(parse_schedule("", d), ParseError);
}

TEST_CASE("make_document") {
  const TimeFunction tf = oracle::two_chain_tf();
  const NetworkDocument d = make_document({"a", "b", "c", "d", "e"}, perfect_graph(tf), ControlSet{1, 4}, tf);
  const NetworkDocument back = parse_document(emit_document(d));
  CHECK(back.graph() == perfect_graph(tf));
  CHECK(*back.time_function() == tf);
  CHECK_THROWS_AS(make_document({"a"}, DiGraph(2)), InputError);
}

TEST_CASE("read_file") { CHECK_THROWS_AS(read_file("/nonexistent/network.txt"), InputError); }
