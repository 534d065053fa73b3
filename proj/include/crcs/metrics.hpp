#pragma once

#include <vector>

#include "crcs/reliability.hpp"

namespace crcs {

struct SnapshotQuality {
  Timestamp t = 0;
  std::size_t size = 0;
  double density = 0.0;
  double avg_core = 0.0;
  double conductance = 0.0;
};

// Community quality over its interval: average snapshot size, density, core
// number and conductance.
struct QualityReport {
  double ass = 0.0;
  double asd = 0.0;
  double ascore = 0.0;
  double ascond = 0.0;
  std::vector<SnapshotQuality> per_snapshot;
};

// Per snapshot of the community's interval, over the vertex-induced subgraph
// G_t[C]: density 2|E|/(|V|(|V|-1)), mean core number, and conductance of C
// against the rest of the unweighted snapshot. Throws ConfigError when the
// community has fewer than two vertices (density undefined) or its interval
// leaves the network.
QualityReport evaluate(const DynamicNetwork& net, const Community& community);

}  // namespace crcs
