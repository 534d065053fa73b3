#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "crcs/reliability.hpp"

namespace crcs {

// Per-snapshot edge filtering state: the eligible edges reachable from q and
// how many consecutive snapshots (ending now) each has stayed eligible.
struct EligibleEdgeState {
  std::vector<Edge> eligible;                       // sorted
  std::unordered_map<std::uint64_t, int> lasting;   // edge key -> lambda
};

struct ScanResult {
  EligibleEdgeState state;
  double ubr1 = 0.0;
};

// Pruning toggles and work counters shared by both search algorithms.
struct SearchOptions {
  bool min_edge_prune = true;  // skip edge sets below k(k+1)/2
  bool ubr_prune = true;       // skip when the bound cannot beat the incumbent
  bool interval_prune = true;  // skip whole intervals on their bound
};

struct SearchStats {
  std::size_t core_extractions = 0;
  std::size_t pruned = 0;
};

// BFS from q over edges with weight >= theta, dropping vertices whose
// filtered degree is below k; lasting times continue from `prev`. Also
// returns the duration-1 score bound for the scanned edge set.
ScanResult scan_snapshot(const GraphInstance& g, const QueryParams& params,
                         const EligibleEdgeState& prev,
                         const ReliabilityContext& ctx);

// Online most-reliable-community search by eligible edge filtering.
std::optional<Community> eef_query(const DynamicNetwork& net,
                                   const QueryParams& params,
                                   const SearchOptions& opts = {},
                                   SearchStats* stats = nullptr);

}  // namespace crcs
