#pragma once

#include <iosfwd>
#include <vector>

#include "crcs/wcf_index.hpp"

namespace crcs {

struct EdgeUpdate {
  enum class Kind { kInsert, kDelete, kReweight };
  Kind kind = Kind::kInsert;
  VertexId u = 0;
  VertexId v = 0;
  double weight = 0.0;  // new weight; unused for deletions
};

// A batch of updates targeting one snapshot, applied in order.
struct GraphDelta {
  Timestamp t = 0;
  std::vector<EdgeUpdate> updates;
};

// Vertices with the same core number as u, reachable from u through
// equal-core vertices.
std::vector<VertexId> subcore(const GraphInstance& g, VertexId u);

// Vertices w with core(w) = core(u), more than core(u) neighbors of core at
// least core(w), reachable from u through such vertices.
std::vector<VertexId> purecore(const GraphInstance& g, VertexId u);

// Record of what one apply_delta call touched, for locality checks.
struct MaintenanceReport {
  // (k, vertex) pairs whose stored threshold changed.
  std::vector<std::pair<int, VertexId>> changed;
  // (k, vertex) pairs that were candidates for recomputation.
  std::vector<std::pair<int, VertexId>> candidates;
};

// Applies the delta to the network snapshot and incrementally updates the
// index so it matches a fresh build of the changed snapshot. Thresholds are
// recomputed only for the candidate vertices named by the update rules;
// forests at unaffected k levels are left untouched.
MaintenanceReport apply_delta(WcfIndex& idx, DynamicNetwork& net,
                              const GraphDelta& delta);

// One update per line: `I u v w`, `D u v`, `W u v w_new`; `#` comments
// ignored. Labels are resolved against the network's label table.
GraphDelta parse_delta(std::istream& in, Timestamp t, const DynamicNetwork& net);

}  // namespace crcs
