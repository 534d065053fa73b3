#include <random>
#include <sstream>

#include "crcs/compress.hpp"
#include "crcs/maintenance.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace crcs;

namespace {

// The example network plus a fourth snapshot: the first one after the
// (v3,v5,0.3) insertion. Repeats the t0 tree nodes across snapshots.
DynamicNetwork example_with_updated_snapshot() {
  DynamicNetwork net = test::example_network();
  GraphInstance updated = net.at(0);
  updated.add_edge(3, 5, 0.3);
  net.snapshots.push_back(std::move(updated));
  return net;
}

bool is_virtual_set(const WcfIndex& idx, int k, Timestamp t, VertexId member) {
  NodeId id = idx.locate(k, t, member);
  REQUIRE(id != kNoNode);
  return idx.forest(k, t).nodes[id].is_virtual();
}

}  // namespace

TEST_CASE("space gain formula") {
  CHECK(space_gain(3, 1) == -1);  // f=1 never pays off
  CHECK(space_gain(4, 1) == -1);
  CHECK(space_gain(1, 1) == -1);
  CHECK(space_gain(3, 2) == 1);
  CHECK(space_gain(2, 3) == 1);
  CHECK(space_gain(2, 2) == 0);
  CHECK(space_gain(4, 5) == 11);
}

TEST_CASE("repeated nodes become virtual") {
  DynamicNetwork net = example_with_updated_snapshot();
  WcfIndex idx = build_wcf_index(net);
  std::size_t slots_before = idx.storage_slots();
  compress(idx);

  CHECK(idx.compressed());
  // The three groups shared between the original and updated trees.
  CHECK(is_virtual_set(idx, 2, 0, 0));  // {v0,v1}
  CHECK(is_virtual_set(idx, 2, 0, 2));  // {v2,v3,v4}
  CHECK(is_virtual_set(idx, 2, 0, 7));  // {v7,v8,v9}
  CHECK(is_virtual_set(idx, 2, 3, 0));

  CHECK(idx.storage_slots() < slots_before);
  // Logical content unchanged.
  CHECK(idx.stored_slots() ==
        [&] {
          std::size_t expected = 0;
          for (const GraphInstance& g : net.snapshots) {
            CoreNumbers core = core_decompose(g);
            for (VertexId v = 0; v < g.size(); ++v) expected += core[v];
          }
          return expected;
        }());
}

TEST_CASE("unique node sets stay inline") {
  GraphInstance g(5);
  g.add_edge(0, 1, 0.2);
  g.add_edge(1, 2, 0.4);
  g.add_edge(2, 3, 0.6);
  g.add_edge(3, 4, 0.8);
  DynamicNetwork net;
  net.labels = {"a", "b", "c", "d", "e"};
  for (VertexId i = 0; i < 5; ++i) net.label_index.emplace(net.labels[i], i);
  net.snapshots = {g};
  WcfIndex idx = build_wcf_index(net);
  std::size_t before = idx.storage_slots();
  compress(idx);
  CHECK_FALSE(idx.compressed());
  CHECK(idx.storage_slots() == before);
}

TEST_CASE("compress round trip is the identity") {
  std::mt19937_64 rng(163);
  for (int trial = 0; trial < 8; ++trial) {
    DynamicNetwork net = test::random_network(rng, 18, 4, 0.3);
    WcfIndex idx = build_wcf_index(net);
    WcfIndex original = idx;
    compress(idx);
    expand(idx);
    CHECK(structurally_equal(idx, original));
    CHECK_FALSE(idx.compressed());
  }
}

TEST_CASE("expand on an uncompressed index is the identity") {
  DynamicNetwork net = test::example_network();
  WcfIndex idx = build_wcf_index(net);
  WcfIndex original = idx;
  expand(idx);
  CHECK(structurally_equal(idx, original));
}

TEST_CASE("queries are transparent to compression") {
  DynamicNetwork net = example_with_updated_snapshot();
  WcfIndex plain = build_wcf_index(net);
  WcfIndex packed = plain;
  compress(packed);

  for (Timestamp t = 0; t < net.snapshot_count(); ++t)
    for (int k = 1; k <= plain.k_max(t); ++k)
      for (double theta : {0.0, 0.25, 0.5, 0.6})
        for (VertexId q = 0; q < net.vertex_count(); ++q) {
          auto a = query_c1(plain, net, k, theta, t, q);
          auto b = query_c1(packed, net, k, theta, t, q);
          CHECK(a.has_value() == b.has_value());
          if (a && b) {
            CHECK(a->vertices == b->vertices);
            CHECK(a->edges == b->edges);
          }
        }
}

TEST_CASE("serialized compressed index stays loadable and smaller") {
  // Five identical snapshots make every node set repeat five times; a
  // four-vertex path node saves 5*(4-1)-4 = 11 slots.
  GraphInstance g(4);
  g.add_edge(0, 1, 0.5);
  g.add_edge(1, 2, 0.5);
  g.add_edge(2, 3, 0.5);
  DynamicNetwork net;
  net.labels = {"a", "b", "c", "d"};
  for (VertexId i = 0; i < 4; ++i) net.label_index.emplace(net.labels[i], i);
  net.snapshots.assign(5, g);

  WcfIndex idx = build_wcf_index(net);
  std::ostringstream plain;
  idx.save(plain);

  std::size_t before = idx.storage_slots();
  compress(idx);
  CHECK(before - idx.storage_slots() == 11);

  std::ostringstream packed;
  idx.save(packed);
  CHECK(packed.str().size() < plain.str().size());

  std::istringstream in(packed.str());
  WcfIndex loaded = WcfIndex::load(in);
  CHECK(loaded.compressed());
  CHECK(structurally_equal(loaded, idx));

  // Expansion equals the uncompressed build.
  expand(loaded);
  std::istringstream plain_in(plain.str());
  CHECK(structurally_equal(loaded, WcfIndex::load(plain_in)));
}

TEST_CASE("corrupted virtual reference is rejected") {
  DynamicNetwork net = example_with_updated_snapshot();
  WcfIndex idx = build_wcf_index(net);
  compress(idx);
  std::ostringstream out;
  idx.save(out);
  std::string payload = out.str();

  // Drop the auxiliary table count to zero; refs then dangle. The count sits
  // right before the 8-byte checksum and the table itself.
  // Corrupting any byte trips the checksum first, which is also acceptable.
  payload[payload.size() / 2] ^= 0x7f;
  std::istringstream in(payload);
  CHECK_THROWS_AS(WcfIndex::load(in), IoError);
}

TEST_CASE("maintenance works on the expanded form") {
  DynamicNetwork net = example_with_updated_snapshot();
  WcfIndex idx = build_wcf_index(net);
  compress(idx);
  expand(idx);
  apply_delta(idx, net, GraphDelta{1, {{EdgeUpdate::Kind::kDelete, 0, 1, 0.0}}});
  CHECK(structurally_equal(idx, build_wcf_index(net)));
}
