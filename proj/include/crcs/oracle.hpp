#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crcs/reliability.hpp"

namespace crcs {

// Brute-force ground truth at desk scale. Kept independent of the search
// modules: it carries its own core computation and component extraction.

struct OracleCandidate {
  Timestamp t_begin = 0;
  Timestamp t_end = 0;
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  double score = 0.0;
};

struct OracleResult {
  double best_score = 0.0;
  std::optional<Community> best;
  std::vector<OracleCandidate> all_candidates;
};

// Exact core numbers by repeated peel-to-fixpoint straight from the
// definition. Cross-checks core_decompose.
CoreNumbers naive_core_numbers(const GraphInstance& g);

// Enumerates every interval inside the query window, intersects the
// per-snapshot eligible edge sets, and extracts the maximal community
// containing q. Guarded to |V| <= 15 and window length <= 5.
OracleResult brute_force_query(const DynamicNetwork& net, const QueryParams& params);

// Randomized guard on the intersection construction: samples edge subsets of
// each interval's common eligible edges, keeps the ones that form a valid
// community, and checks none scores above the reported candidate. Returns
// false on a violation.
bool oracle_subset_check(const DynamicNetwork& net, const QueryParams& params,
                         const OracleResult& result, int samples,
                         std::uint64_t seed);

}  // namespace crcs
