#include <random>

#include "crcs/oracle.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace crcs;

TEST_CASE("oracle on single snapshot equals the local core") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    DynamicNetwork net = test::random_network(rng, 10, 1, 0.4);
    QueryParams params{2, 2, 0.0, 0, 0, 1.0};
    OracleResult truth = brute_force_query(net, params);
    auto direct = theta_k_core(net.at(0), 0.0, 2, 2);
    if (!direct) {
      CHECK_FALSE(truth.best);
      continue;
    }
    REQUIRE(truth.best);
    CHECK(truth.best->vertices == direct->vertices);
    ReliabilityContext ctx{max_kcore_size(net, 2, 0, 0), 1, 1.0};
    CHECK(truth.best_score ==
          doctest::Approx(score(static_cast<double>(direct->vertices.size()), 1, ctx)));
  }
}

TEST_CASE("oracle on the example network finds the worked answer") {
  DynamicNetwork net = test::example_network();
  QueryParams params{0, 3, 0.4, 0, 2, 1.0};
  OracleResult truth = brute_force_query(net, params);
  REQUIRE(truth.best);
  CHECK(truth.best->vertices == std::vector<VertexId>{0, 2, 3, 4});
  CHECK(truth.best->t_begin == 0);
  CHECK(truth.best->t_end == 1);
  // Four members of a nine-vertex maximal 3-core over two of three snapshots.
  ReliabilityContext ctx{9, 3, 1.0};
  CHECK(truth.best_score == doctest::Approx(score(4, 2, ctx)));
}

TEST_CASE("oracle absent when no k-core exists") {
  DynamicNetwork net = test::example_network();
  QueryParams params{0, 4, 0.0, 0, 2, 1.0};
  OracleResult truth = brute_force_query(net, params);
  CHECK_FALSE(truth.best);
  CHECK(truth.best_score == 0.0);
}

TEST_CASE("oracle size guard") {
  std::mt19937_64 rng(43);
  DynamicNetwork net = test::random_network(rng, 16, 2, 0.3);
  QueryParams params{0, 2, 0.0, 0, 1, 1.0};
  CHECK_THROWS_AS(brute_force_query(net, params), ConfigError);
}

TEST_CASE("fixed-interval answers survive the randomized subset check") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    DynamicNetwork net = test::random_network(rng, 9, 3, 0.45);
    QueryParams params{0, 2, 0.3, 0, 2, 1.0};
    OracleResult truth = brute_force_query(net, params);
    CHECK(oracle_subset_check(net, params, truth, 120, rng()));
  }
}

TEST_CASE("naive core numbers cross-check") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    GraphInstance g = test::random_graph(rng, 20, 0.25);
    CHECK(naive_core_numbers(g) == core_decompose(g));
  }
}
