#include <random>
#include <sstream>

#include "crcs/maintenance.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace crcs;

namespace {

GraphDelta one(Timestamp t, EdgeUpdate up) { return GraphDelta{t, {up}}; }

EdgeUpdate insert(VertexId u, VertexId v, double w) {
  return {EdgeUpdate::Kind::kInsert, u, v, w};
}
EdgeUpdate erase(VertexId u, VertexId v) {
  return {EdgeUpdate::Kind::kDelete, u, v, 0.0};
}
EdgeUpdate reweight(VertexId u, VertexId v, double w) {
  return {EdgeUpdate::Kind::kReweight, u, v, w};
}

}  // namespace

TEST_CASE("subcore spans uniform-core components") {
  GraphInstance triangle(4);
  triangle.add_edge(0, 1, 0.5);
  triangle.add_edge(1, 2, 0.5);
  triangle.add_edge(0, 2, 0.5);
  triangle.add_edge(2, 3, 0.5);
  // Cores: 2,2,2,1.
  CHECK(subcore(triangle, 0) == std::vector<VertexId>{0, 1, 2});
  CHECK(subcore(triangle, 3) == std::vector<VertexId>{3});
}

TEST_CASE("subcore matches a definition-level oracle") {
  std::mt19937_64 rng(139);
  for (int trial = 0; trial < 15; ++trial) {
    GraphInstance g = test::random_graph(rng, 20, 0.2);
    CoreNumbers core = core_decompose(g);
    for (VertexId u = 0; u < 20; u += 4) {
      std::vector<VertexId> got = subcore(g, u);
      if (g.degree(u) == 0) {
        CHECK(got == std::vector<VertexId>{u});
        continue;
      }
      // BFS over equal-core vertices from u.
      std::vector<char> seen(20, 0);
      std::vector<VertexId> stack{u}, expect;
      seen[u] = 1;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        expect.push_back(v);
        for (const auto& [nb, w] : g.neighbors(v))
          if (!seen[nb] && core[nb] == core[u]) {
            seen[nb] = 1;
            stack.push_back(nb);
          }
      }
      std::sort(expect.begin(), expect.end());
      CHECK(got == expect);
    }
  }
}

TEST_CASE("purecore on the example insertion") {
  DynamicNetwork net = test::example_network();
  GraphInstance g = net.at(0);
  g.add_edge(3, 5, 0.3);
  CHECK(purecore(g, 3) == std::vector<VertexId>{0, 2, 3, 5, 6, 7, 8});
}

TEST_CASE("purecore boundary of condition two") {
  GraphInstance path(3);
  path.add_edge(0, 1, 0.5);
  path.add_edge(1, 2, 0.5);
  // All cores 1; vertex 1 has two qualified neighbors, the ends have one.
  CHECK(purecore(path, 0).empty());
  std::vector<VertexId> mid = purecore(path, 1);
  CHECK(mid == std::vector<VertexId>{1});
}

TEST_CASE("purecore against a direct condition check") {
  std::mt19937_64 rng(149);
  for (int trial = 0; trial < 15; ++trial) {
    GraphInstance g = test::random_graph(rng, 20, 0.25);
    CoreNumbers core = core_decompose(g);
    for (VertexId u = 0; u < 20; u += 5) {
      auto qualifies = [&](VertexId w) {
        if (core[w] != core[u]) return false;
        int strong = 0;
        for (const auto& [nb, wt] : g.neighbors(w))
          if (core[nb] >= core[w]) ++strong;
        return strong > core[u];
      };
      std::vector<VertexId> expect;
      if (qualifies(u)) {
        std::vector<char> seen(20, 0);
        std::vector<VertexId> stack{u};
        seen[u] = 1;
        while (!stack.empty()) {
          VertexId v = stack.back();
          stack.pop_back();
          expect.push_back(v);
          for (const auto& [nb, w] : g.neighbors(v))
            if (!seen[nb] && qualifies(nb)) {
              seen[nb] = 1;
              stack.push_back(nb);
            }
        }
        std::sort(expect.begin(), expect.end());
      }
      CHECK(purecore(g, u) == expect);
    }
  }
}

TEST_CASE("example insertion changes exactly v5 and v6") {
  DynamicNetwork net = test::example_network();
  WcfIndex idx = build_wcf_index(net);
  auto before5 = idx.threshold_index(2, 0, 5);
  auto before6 = idx.threshold_index(2, 0, 6);
  REQUIRE(before5);
  REQUIRE(before6);
  CHECK(idx.grid().values[*before5] == doctest::Approx(0.2));

  MaintenanceReport report = apply_delta(idx, net, one(0, insert(3, 5, 0.3)));

  CHECK(report.changed ==
        std::vector<std::pair<int, VertexId>>{{2, 5}, {2, 6}});
  CHECK(idx.grid().values[*idx.threshold_index(2, 0, 5)] == doctest::Approx(0.3));
  CHECK(idx.grid().values[*idx.threshold_index(2, 0, 6)] == doctest::Approx(0.3));

  // The k=2 candidates are exactly the two vertices the update rule names.
  std::vector<VertexId> k2_candidates;
  for (auto [k, v] : report.candidates)
    if (k == 2) k2_candidates.push_back(v);
  CHECK(k2_candidates == std::vector<VertexId>{5, 6});

  // Post-state equals a fresh build, with {v5,v6} now a 0.3 node.
  WcfIndex rebuilt = build_wcf_index(net);
  CHECK(structurally_equal(idx, rebuilt));
}

TEST_CASE("no-op reweight keeps the index untouched") {
  DynamicNetwork net = test::example_network();
  WcfIndex idx = build_wcf_index(net);
  std::ostringstream before;
  idx.save(before);
  MaintenanceReport report = apply_delta(idx, net, one(0, reweight(0, 1, 0.6)));
  CHECK(report.changed.empty());
  std::ostringstream after;
  idx.save(after);
  CHECK(before.str() == after.str());
}

TEST_CASE("inapplicable updates raise delta errors") {
  DynamicNetwork net = test::example_network();
  WcfIndex idx = build_wcf_index(net);
  CHECK_THROWS_AS(apply_delta(idx, net, one(0, insert(0, 1, 0.5))), DeltaError);
  CHECK_THROWS_AS(apply_delta(idx, net, one(0, erase(0, 9))), DeltaError);
  CHECK_THROWS_AS(apply_delta(idx, net, one(0, reweight(0, 9, 0.5))), DeltaError);
  CHECK_THROWS_AS(apply_delta(idx, net, one(0, insert(0, 5, 1.5))), DeltaError);
  CHECK_THROWS_AS(apply_delta(idx, net, one(9, insert(0, 5, 0.5))), ConfigError);
}

TEST_CASE("insert then delete restores the original structure") {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 10; ++trial) {
    DynamicNetwork net = test::random_network(rng, 14, 2, 0.3);
    WcfIndex idx = build_wcf_index(net);
    WcfIndex original = idx;

    VertexId u = 0, v = 0;
    do {
      u = static_cast<VertexId>(rng() % 14);
      v = static_cast<VertexId>(rng() % 14);
    } while (u == v || net.at(1).has_edge(u, v));
    double w = 0.05 * (1 + rng() % 20);

    apply_delta(idx, net, one(1, insert(u, v, w)));
    apply_delta(idx, net, one(1, erase(u, v)));
    CHECK(structurally_equal(idx, original));
  }
}

TEST_CASE("random mixed deltas keep the index equal to a rebuild") {
  std::mt19937_64 rng(157);
  DynamicNetwork net = test::random_network(rng, 20, 3, 0.25);
  WcfIndex idx = build_wcf_index(net);

  for (int step = 0; step < 50; ++step) {
    Timestamp t = static_cast<Timestamp>(rng() % 3);
    GraphInstance& g = net.at(t);
    EdgeUpdate up;
    double roll = static_cast<double>(rng() % 100) / 100.0;
    std::vector<Edge> edges = g.edges();
    if (roll < 0.4 || edges.empty()) {
      VertexId u = 0, v = 0;
      int guard = 0;
      do {
        u = static_cast<VertexId>(rng() % 20);
        v = static_cast<VertexId>(rng() % 20);
      } while ((u == v || g.has_edge(u, v)) && ++guard < 100);
      if (u == v || g.has_edge(u, v)) continue;
      up = insert(u, v, 0.05 * (1 + rng() % 20));
    } else if (roll < 0.7) {
      Edge e = edges[rng() % edges.size()];
      up = erase(e.u, e.v);
    } else {
      Edge e = edges[rng() % edges.size()];
      up = reweight(e.u, e.v, 0.05 * (1 + rng() % 20));
    }
    MaintenanceReport report = apply_delta(idx, net, one(t, up));

    // Locality: everything that changed was a declared candidate.
    for (auto [k, v] : report.changed) {
      bool declared = false;
      for (auto [ck, cv] : report.candidates)
        declared = declared || (ck == k && cv == v);
      CHECK(declared);
    }

    WcfIndex rebuilt = build_wcf_index(net);
    REQUIRE(structurally_equal(idx, rebuilt));
  }
}

TEST_CASE("maintenance respects a coarse grid") {
  std::mt19937_64 rng(167);
  ThetaGrid coarse = ThetaGrid::standard(4);
  DynamicNetwork net = test::random_network(rng, 12, 2, 0.35);
  WcfIndex idx = build_wcf_index(net, coarse);
  for (int step = 0; step < 15; ++step) {
    Timestamp t = static_cast<Timestamp>(rng() % 2);
    GraphInstance& g = net.at(t);
    std::vector<Edge> edges = g.edges();
    EdgeUpdate up;
    if (rng() % 2 == 0 || edges.empty()) {
      VertexId u = 0, v = 0;
      int guard = 0;
      do {
        u = static_cast<VertexId>(rng() % 12);
        v = static_cast<VertexId>(rng() % 12);
      } while ((u == v || g.has_edge(u, v)) && ++guard < 100);
      if (u == v || g.has_edge(u, v)) continue;
      up = insert(u, v, 0.05 * (1 + rng() % 20));
    } else {
      Edge e = edges[rng() % edges.size()];
      up = erase(e.u, e.v);
    }
    apply_delta(idx, net, one(t, up));
    REQUIRE(structurally_equal(idx, build_wcf_index(net, coarse)));
  }
}

TEST_CASE("delta parsing") {
  DynamicNetwork net = test::example_network();
  std::istringstream in("# delta\nI v0 v5 0.4\nD v0 v1\nW v2 v3 0.9\n");
  GraphDelta delta = parse_delta(in, 1, net);
  REQUIRE(delta.updates.size() == 3);
  CHECK(delta.updates[0].kind == EdgeUpdate::Kind::kInsert);
  CHECK(delta.updates[0].u == 0);
  CHECK(delta.updates[0].v == 5);
  CHECK(delta.updates[1].kind == EdgeUpdate::Kind::kDelete);
  CHECK(delta.updates[2].kind == EdgeUpdate::Kind::kReweight);
  CHECK(delta.updates[2].weight == doctest::Approx(0.9));

  std::istringstream bad("X v0 v1\n");
  CHECK_THROWS_AS(parse_delta(bad, 0, net), ParseError);
  std::istringstream unknown("I v0 zz 0.4\n");
  CHECK_THROWS_AS(parse_delta(unknown, 0, net), ParseError);
}
