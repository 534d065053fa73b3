#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crcs/coredec.hpp"
#include "crcs/graph.hpp"

namespace crcs {

// Standard threshold grid. Build-time configurable; must start at 0 and end
// at 1 so every indexed vertex receives a threshold.
struct ThetaGrid {
  std::vector<double> values;

  static ThetaGrid standard(int divisions = 10);
  std::size_t size() const { return values.size(); }
  // Largest grid index whose value is <= theta.
  int floor_index(double theta) const;
  bool on_grid(double theta) const;
  void validate() const;

  friend bool operator==(const ThetaGrid&, const ThetaGrid&) = default;
};

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr std::int32_t kNoVirtual = -1;

// One group of connected vertices sharing a threshold. Vertices are stored
// inline or, after compression, as a reference into the auxiliary table.
struct ThetaTreeNode {
  std::int16_t theta_idx = 0;
  NodeId parent = kNoNode;
  std::vector<NodeId> children;
  std::vector<VertexId> vertices;       // empty when virtual_ref is set
  std::int32_t virtual_ref = kNoVirtual;

  bool is_virtual() const { return virtual_ref != kNoVirtual; }
};

struct ThetaForest {
  std::vector<ThetaTreeNode> nodes;
};

// Deduplicated storage for tree-node vertex sets that repeat across the
// index.
struct AuxiliaryTable {
  std::vector<std::vector<VertexId>> sets;

  bool empty() const { return sets.empty(); }
  friend bool operator==(const AuxiliaryTable&, const AuxiliaryTable&) = default;
};

// Per-(k, timestamp) forest of threshold groups over a dynamic network.
class WcfIndex {
 public:
  WcfIndex() = default;

  const ThetaGrid& grid() const { return grid_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t snapshot_count() const { return forests_.size(); }
  int k_max(Timestamp t) const;

  const ThetaForest& forest(int k, Timestamp t) const;
  ThetaForest& forest(int k, Timestamp t);

  NodeId locate(int k, Timestamp t, VertexId v) const;
  // Stored (grid) threshold index of v at level k, or nullopt when v is not
  // indexed there.
  std::optional<int> threshold_index(int k, Timestamp t, VertexId v) const;

  // Size of the largest connected k-core component of snapshot t, captured
  // at build time so indexed queries never rescan the network.
  int max_core_component(int k, Timestamp t) const;

  // Resolves a node's vertex list through the auxiliary table when needed.
  const std::vector<VertexId>& vertices_of(const ThetaTreeNode& node) const;

  // Total stored vertex slots: one per (vertex, k level, timestamp),
  // counting virtual nodes at their resolved size.
  std::size_t stored_slots() const;

  // Physical slot cost: inline vertices, one slot per virtual reference,
  // plus the auxiliary table entries.
  std::size_t storage_slots() const;

  const AuxiliaryTable& aux() const { return aux_; }
  bool compressed() const { return !aux_.empty(); }

  void save(std::ostream& out) const;
  void save(const std::string& path) const;
  static WcfIndex load(std::istream& in);
  static WcfIndex load(const std::string& path);

  // JSON mirror of the structure for debugging and test fixtures.
  std::string to_json() const;

  // Rebuilds locators and children lists from node payloads. Internal use by
  // build, load, maintenance and compression.
  void reindex();

 private:
  friend WcfIndex build_wcf_index(const DynamicNetwork&, const ThetaGrid&, int);
  friend void compress(WcfIndex& idx);
  friend void expand(WcfIndex& idx);
  friend class IndexMaintainer;

  ThetaGrid grid_;
  std::size_t vertex_count_ = 0;
  // forests_[t][k-1]
  std::vector<std::vector<ThetaForest>> forests_;
  // locator_[t][k-1][v] -> node id or kNoNode
  std::vector<std::vector<std::vector<NodeId>>> locator_;
  // core_component_max_[t][k-1]
  std::vector<std::vector<int>> core_component_max_;
  AuxiliaryTable aux_;
};

// Builds the index by sweeping the threshold grid downward on every
// snapshot. Snapshots are processed independently; `threads` > 1 spreads
// them over a small worker pool.
WcfIndex build_wcf_index(const DynamicNetwork& net,
                         const ThetaGrid& grid = ThetaGrid::standard(),
                         int threads = 1);

// C(1,t): the community containing q at snapshot t for the given k and
// theta, answered from the index plus the snapshot for edge materialization.
std::optional<Subgraph> query_c1(const WcfIndex& idx, const DynamicNetwork& net,
                                 int k, double theta, Timestamp t, VertexId q);

// Structural equality up to node-id renaming: same vertex partition, same
// thresholds, same parent relation per (k,t).
bool structurally_equal(const WcfIndex& a, const WcfIndex& b);

// Builds one snapshot's threshold tables: thresholds[k-1][v] = grid index or
// -1. Shared by construction and maintenance.
std::vector<std::vector<int>> compute_thresholds(const GraphInstance& g,
                                                 const ThetaGrid& grid);

// Assembles the forest for one (k,t) from a threshold table.
ThetaForest build_forest(const GraphInstance& g, const std::vector<int>& thres);

// Largest connected k-core component size per k in 1..kmax.
std::vector<int> core_component_sizes(const GraphInstance& g);

}  // namespace crcs
