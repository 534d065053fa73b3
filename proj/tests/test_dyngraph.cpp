#include <sstream>

#include "crcs/graph.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace crcs;

TEST_CASE("graph instance invariants") {
  GraphInstance g(4);
  g.add_edge(0, 1, 0.5);
  CHECK(g.weight(1, 0) == doctest::Approx(0.5));
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(3) == 0);
  CHECK(g.weight(0, 3) == 0.0);
  CHECK_THROWS_AS(g.add_edge(1, 0, 0.3), InvariantError);
  CHECK_THROWS_AS(g.add_edge(2, 2, 0.3), InvariantError);
  CHECK_THROWS_AS(g.add_edge(2, 3, 0.0), InvariantError);
  CHECK_THROWS_AS(g.add_edge(2, 3, 1.5), InvariantError);
  CHECK_THROWS_AS(g.remove_edge(0, 2), InvariantError);
  g.remove_edge(0, 1);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("ingest splits chronologically into equal partitions") {
  std::ostringstream in;
  for (int i = 0; i < 12; ++i)
    in << "a" << i << " b" << i << " " << i << " " << (1 + i % 3) << "\n";
  std::istringstream is(in.str());
  DynamicNetwork net = ingest_edge_stream(is, 3, WeightMode::kGiven);
  REQUIRE(net.snapshot_count() == 3);
  // 12 edges over 3 partitions; min-max drops the minimum-weight ones.
  std::size_t total = 0;
  for (const auto& g : net.snapshots) total += g.edge_count();
  CHECK(total == 8);  // weights {1,2,3} -> {0, .5, 1}; four weight-1 lines drop
}

TEST_CASE("ingest min-max endpoints") {
  std::istringstream is("a b 0 2\nc d 0 5\ne f 0 8\n");
  DynamicNetwork net = ingest_edge_stream(is, 1, WeightMode::kGiven);
  const GraphInstance& g = net.at(0);
  CHECK(g.edge_count() == 2);  // the weight-2 edge normalizes to 0 and drops
  CHECK(g.weight(*net.find_label("c"), *net.find_label("d")) == doctest::Approx(0.5));
  CHECK(g.weight(*net.find_label("e"), *net.find_label("f")) == doctest::Approx(1.0));
}

TEST_CASE("ingest merges duplicates, given mode keeps max") {
  std::istringstream is("a b 0 2\na b 0 5\nc d 1 3\n");
  DynamicNetwork net = ingest_edge_stream(is, 1, WeightMode::kGiven);
  const GraphInstance& g = net.at(0);
  // weights after merge {5, 3}; min-max over {5,3} -> {1, 0}: c-d drops.
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(*net.find_label("a"), *net.find_label("b")) == doctest::Approx(1.0));
}

TEST_CASE("ingest frequency mode counts duplicates") {
  std::istringstream is("a b 0\na b 1\na c 2\n");
  DynamicNetwork net = ingest_edge_stream(is, 1, WeightMode::kFrequency);
  const GraphInstance& g = net.at(0);
  // counts {2,1} -> normalized {1, 0}: a-c drops.
  CHECK(g.edge_count() == 1);
  CHECK(g.weight(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("uniform weights normalize to one") {
  std::istringstream is("a b 0 3\nb c 0 3\nc a 1 3\n");
  DynamicNetwork net = ingest_edge_stream(is, 1, WeightMode::kGiven);
  CHECK(net.at(0).edge_count() == 3);
  net.at(0).for_each_edge(
      [&](VertexId, VertexId, double w) { CHECK(w == doctest::Approx(1.0)); });
}

TEST_CASE("ingest errors") {
  {
    std::istringstream is("a b\n");
    CHECK_THROWS_AS(ingest_edge_stream(is, 1, WeightMode::kGiven), ParseError);
  }
  {
    std::istringstream is("a b 0 0.5\n");
    CHECK_THROWS_AS(ingest_edge_stream(is, 2, WeightMode::kGiven), ConfigError);
  }
  {
    std::istringstream is("a b 0\n");
    CHECK_THROWS_AS(ingest_edge_stream(is, 1, WeightMode::kGiven), ParseError);
  }
}

TEST_CASE("ingest is deterministic") {
  std::string text = test::example_edge_list();
  std::istringstream a(text), b(text);
  DynamicNetwork na = ingest_edge_stream(a, 3, WeightMode::kGiven, NormalizeMode::kNone);
  DynamicNetwork nb = ingest_edge_stream(b, 3, WeightMode::kGiven, NormalizeMode::kNone);
  std::ostringstream sa, sb;
  save_network(na, sa);
  save_network(nb, sb);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("ingest none mode preserves weights and snapshot layout") {
  std::istringstream is(test::example_edge_list());
  DynamicNetwork net = ingest_edge_stream(is, 3, WeightMode::kGiven, NormalizeMode::kNone);
  DynamicNetwork direct = test::example_network();
  REQUIRE(net.snapshot_count() == 3);
  for (int t = 0; t < 3; ++t) {
    CHECK(net.at(t).edge_count() == direct.at(t).edge_count());
    direct.at(t).for_each_edge([&](VertexId u, VertexId v, double w) {
      VertexId nu = *net.find_label("v" + std::to_string(u));
      VertexId nv = *net.find_label("v" + std::to_string(v));
      CHECK(net.at(t).weight(nu, nv) == doctest::Approx(w));
    });
  }
}

TEST_CASE("degree accessor") {
  GraphInstance triangle(4);
  triangle.add_edge(0, 1, 0.5);
  triangle.add_edge(1, 2, 0.5);
  triangle.add_edge(0, 2, 0.5);
  CHECK(triangle.degree(1) == 2);
  CHECK(triangle.degree(3) == 0);  // isolated

  DynamicNetwork net = test::example_network();
  CHECK(net.at(0).degree(0) == 5);  // v1, v2, v3, v4, v7
  CHECK(net.at(0).degree(9) == 3);
}

TEST_CASE("every stored edge appears from both endpoints with weight in (0,1]") {
  DynamicNetwork net = test::example_network();
  for (const auto& g : net.snapshots) {
    std::size_t directed = 0;
    for (VertexId v = 0; v < g.size(); ++v)
      for (const auto& [u, w] : g.neighbors(v)) {
        CHECK(g.weight(u, v) == doctest::Approx(w));
        CHECK(w > 0.0);
        CHECK(w <= 1.0);
        ++directed;
      }
    CHECK(directed == 2 * g.edge_count());
  }
}

TEST_CASE("induced_by_edges") {
  DynamicNetwork net = test::example_network();
  const GraphInstance& g = net.at(0);

  GraphInstance empty = induced_by_edges(g, {});
  CHECK(empty.edge_count() == 0);

  std::vector<Edge> all = g.edges();
  GraphInstance full = induced_by_edges(g, all);
  CHECK(full == g);

  std::vector<Edge> triangle{{7, 8}, {7, 9}, {8, 9}};
  GraphInstance tri = induced_by_edges(g, triangle);
  CHECK(tri.edge_count() == 3);
  CHECK(tri.degree(7) == 2);
  CHECK(tri.degree(0) == 0);

  std::vector<Edge> bogus{{1, 9}};
  CHECK_THROWS_AS(induced_by_edges(g, bogus), InvariantError);
}

TEST_CASE("network serialization round trip and corruption") {
  DynamicNetwork net = test::example_network();
  std::ostringstream out;
  save_network(net, out);
  std::string payload = out.str();

  std::istringstream in(payload);
  DynamicNetwork loaded = load_network(in);
  REQUIRE(loaded.snapshot_count() == net.snapshot_count());
  for (std::size_t t = 0; t < 3; ++t) CHECK(loaded.snapshots[t] == net.snapshots[t]);
  CHECK(loaded.labels == net.labels);

  std::string truncated = payload.substr(0, payload.size() / 2);
  std::istringstream tin(truncated);
  CHECK_THROWS_AS(load_network(tin), IoError);

  std::string corrupted = payload;
  corrupted[corrupted.size() / 2] ^= 0x5a;
  std::istringstream cin(corrupted);
  CHECK_THROWS_AS(load_network(cin), IoError);
}
