#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ssc/ct_model.hpp"
#include "ssc/errors.hpp"
#include "ssc/zero_forcing.hpp"

using namespace ssc;

TEST_CASE("two-chain time function and T_max") {
  const TimeFunction tf = oracle::two_chain_tf();
  CHECK(tf.gamma() == 4);
  CHECK(tf.tmax(1) == 1);
  CHECK(tf.tmax(4) == 2);
  CHECK(tf.tmax(2) == 3);
  CHECK(tf.tmax(5) == 4);
  CHECK(tf.tmax(3) == 4);
}

TEST_CASE("validate_time_function") {
  CHECK(validate_time_function(oracle::two_chain_tf()).empty());
  const TimeFunction dup(ChainSet{{1, 2, 3}, {4, 5}}, {{1, 1}, {4, 1}, {2, 2}, {5, 2}, {3, 4}});
  CHECK_FALSE(validate_time_function(dup).empty());
  CHECK_THROWS_AS(TimeFunction::checked(ChainSet{{1, 2, 3}, {4, 5}}, {{1, 1}, {4, 1}, {2, 2}, {5, 2}, {3, 4}}),
                  InputError);

  const TimeFunction single(ChainSet{{1}}, {{1, 1}});
  CHECK(validate_time_function(single).empty());
  CHECK(single.gamma() == 1);
  CHECK(single.tmax(1) == 1);

  CHECK_FALSE(validate_time_function(TimeFunction(ChainSet{{1, 2}}, {{1, 2}, {2, 2}})).empty());
  CHECK_FALSE(validate_time_function(TimeFunction(ChainSet{{1, 2}}, {{1, 1}})).empty());
  CHECK_FALSE(validate_time_function(TimeFunction(ChainSet{{1, 3}}, {{1, 1}, {3, 2}})).empty());
  CHECK_FALSE(validate_time_function(TimeFunction(ChainSet{{1, 2, 3}}, {{1, 1}, {2, 3}, {3, 2}})).empty());
  CHECK_FALSE(validate_time_function(TimeFunction(ChainSet{{1, 2}}, {{1, 1}, {2, 5}})).empty());
}

TEST_CASE("is_ct_constructed") {
  const TimeFunction tf = oracle::two_chain_tf();
  const DiGraph chain_only(5, tf.chains().edges());
  CHECK(is_ct_constructed(chain_only, tf));
  CHECK(is_ct_constructed(perfect_graph(tf), tf));
  CHECK_FALSE(is_ct_constructed(add_edges(chain_only, {{1, 3}}), tf));
  CHECK_FALSE(is_ct_constructed(remove_edges(chain_only, {{4, 5}}), tf));
}

TEST_CASE("perfect graph of the two-chain time function") {
  const TimeFunction tf = oracle::two_chain_tf();
  const Node v1 = 1, v2 = 2, v3 = 3, u1 = 4, u2 = 5;
  const EdgeSet optional{{u1, v1}, {v1, u1}, {u1, v2}, {v2, u1}, {v3, u1}, {u2, v1}, {u2, v2},
                       {v2, u2}, {u2, v3}, {v3, u2}, {v1, v1}, {v2, v2}, {v3, v3}, {u1, u1},
                       {u2, u2}, {v2, v1}, {v3, v2}, {u2, u1}, {v3, v1}};
  REQUIRE(optional.size() == 19);
  EdgeSet expected = optional;
  for (const Edge& e : tf.chains().edges()) expected.insert(e);
  CHECK(perfect_graph(tf).edges() == expected);
  CHECK(perfect_graph(tf).edge_count() == 22);
}

TEST_CASE("perfect_graph examples") {
  const TimeFunction single(ChainSet{{1}}, {{1, 1}});
  CHECK(perfect_graph(single).edges() == EdgeSet{{1, 1}});

  const auto r = forcing_schedule(oracle::six_node(), {1, 2}, TieBreakPolicy::explicit_forces(oracle::six_node_forces()));
  const DiGraph perf = perfect_graph(TimeFunction::from_record(r));
  CHECK(perf.edge_count() == 30);
  EdgeSet expected = oracle::six_node().edges();
  for (const Edge& e : oracle::six_node_critical_additive()) expected.insert(e);
  CHECK(perf.edges() == expected);
}

TEST_CASE("perfect_edge_count") {
  CHECK(perfect_edge_count(6, 2) == 30);
  CHECK(perfect_edge_count(1, 1) == 1);
  CHECK(perfect_edge_count(4, 2) == 15);
  CHECK(perfect_graph(oracle::block_g2().tf).edge_count() == 15);
  CHECK(perfect_edge_count(7, 3) == 43);
  CHECK(perfect_edge_count(3, 1) == 8);
  CHECK_THROWS_AS(perfect_edge_count(3, 0), InputError);
  CHECK_THROWS_AS(perfect_edge_count(3, 4), InputError);
}

TEST_CASE("is_perfect") {
  CHECK_FALSE(is_perfect(oracle::six_node(), {1, 2}).has_value());

  const auto r = forcing_schedule(oracle::six_node(), {1, 2}, TieBreakPolicy::explicit_forces(oracle::six_node_forces()));
  const TimeFunction tf = TimeFunction::from_record(r);
  const auto witness = is_perfect(perfect_graph(tf), {1, 2});
  REQUIRE(witness.has_value());
  CHECK(witness->times() == tf.times());
  CHECK(perfect_graph(*witness) == perfect_graph(tf));

  const auto loop = is_perfect(DiGraph(1, {{1, 1}}), {1});
  REQUIRE(loop.has_value());
  CHECK(loop->chains() == ChainSet{{1}});
  CHECK(loop->times() == std::map<Node, int>{{1, 1}});

  CHECK_THROWS_AS(is_perfect(DiGraph(3, {{1, 2}, {2, 3}}), {3}), NotZfsError);
}

TEST_CASE("reversing a chain edge is always admissible") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    std::uniform_int_distribution<int> pick_m(1, n);
    const TimeFunction tf = random_time_function(n, pick_m(rng), rng);
    for (const Edge& e : tf.chains().edges()) CHECK(is_admissible_edge(tf, {e.to, e.from}));
  }
}

TEST_CASE("property: random time functions are valid and the perfect graph matches an independent enumeration") {
  std::mt19937_64 rng(32);
  for (int n = 1; n <= 8; ++n) {
    for (int m = 1; m <= n; ++m) {
      for (int rep = 0; rep < 10; ++rep) {
        const TimeFunction tf = random_time_function(n, m, rng);
        REQUIRE(validate_time_function(tf).empty());
        std::vector<std::vector<Node>> raw;
        for (const Chain& c : tf.chains().chains()) raw.push_back(c.nodes());
        const DiGraph perf = perfect_graph(tf);
        CHECK(perf.edges() == oracle::perfect_edges(raw, tf.times()));
        CHECK(static_cast<std::int64_t>(perf.edge_count()) == perfect_edge_count(n, m));
        for (Node v = 1; v <= n; ++v) CHECK(perf.has_edge(v, v));
      }
    }
  }
}

TEST_CASE("property: perfect graphs are recognised, and their time function is unique") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 7;
    std::uniform_int_distribution<int> pick_m(1, n);
    const TimeFunction tf = random_time_function(n, pick_m(rng), rng);
    const DiGraph perf = perfect_graph(tf);
    const ControlSet z(tf.chains().sources());
    const auto witness = is_perfect(perf, z);
    REQUIRE(witness.has_value());
    CHECK(witness->times() == tf.times());
    for (const auto& r : enumerate_forcing_schedules(perf, z, 200)) CHECK(r.times == tf.times());
  }
}

TEST_CASE("property: every class member is controlled by the sources") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 1 + trial % 9;
    std::uniform_int_distribution<int> pick_m(1, n);
    const TimeFunction tf = random_time_function(n, pick_m(rng), rng);
    const DiGraph g = sample_class_member(tf, rng);
    CHECK(is_ct_constructed(g, tf));
    CHECK(oracle::is_zfs(g, tf.chains().sources()));
    CHECK(is_perfect(g, ControlSet(tf.chains().sources())).has_value() == (g == perfect_graph(tf)));
  }
}

TEST_CASE("property: perfect graphs are maximal for single non-loop edges") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    std::uniform_int_distribution<int> pick_m(1, n);
    const TimeFunction tf = random_time_function(n, pick_m(rng), rng);
    const DiGraph perf = perfect_graph(tf);
    const NodeSet z = tf.chains().sources();
    for (Node u = 1; u <= n; ++u) {
      for (Node v = 1; v <= n; ++v) {
        if (perf.has_edge(u, v)) continue;
        CHECK_FALSE(oracle::is_zfs(add_edges(perf, {{u, v}}), z));
      }
    }
  }
}

TEST_CASE("property: with chain edges only, the ZFSs are exactly the supersets of the sources") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    std::uniform_int_distribution<int> pick_m(1, n);
    const TimeFunction tf = random_time_function(n, pick_m(rng), rng);
    const DiGraph g(n, tf.chains().edges());
    const NodeSet sources = tf.chains().sources();
    for (const NodeSet& z : oracle::all_control_sets(n)) {
      const bool superset = std::includes(z.begin(), z.end(), sources.begin(), sources.end());
      CHECK(is_zfs(g, ControlSet(z)) == superset);
    }
  }
}
