#pragma once

#include <span>
#include <vector>

#include "crcs/coredec.hpp"
#include "crcs/graph.hpp"

namespace crcs {

// Absolute tolerance for score comparisons and tie detection.
inline constexpr double kScoreTol = 1e-9;

// Normalizers shared by every score evaluation of one query.
struct ReliabilityContext {
  int v_k_max = 0;    // size of the largest k-core over the query window
  int window_len = 0; // |T_Q|
  double alpha = 1.0;
};

// Harmonic combination of normalized size and duration:
//   (1+a^2) * N(V)*N(T) / (a^2*N(V) + N(T)),
// with N(V) = size / v_k_max and N(T) = duration / window_len.
// Zero when size or duration is zero; throws ConfigError when v_k_max is 0.
double score(double size, double duration, const ReliabilityContext& ctx);

// Max over the window of the largest connected k-core component size,
// unfiltered by theta. Zero when no k-core exists.
int max_kcore_size(const DynamicNetwork& net, int k, Timestamp t_begin,
                   Timestamp t_end);

// Upper bound on the score of any community with the given duration built
// from an eligible edge set of the given size: a k-core on |E| edges has at
// most 2|E|/k vertices. N(V) is clamped to 1.
double ubr_edge_set(std::size_t num_eligible_edges, int k, int duration,
                    const ReliabilityContext& ctx);

// Upper bound over an interval from the per-timestamp community sizes
// (0 marks a missing entry). For each position n the best conceivable
// duration is base_duration + LCT(n) - 1, where LCT(n) is the longest
// consecutive run around n whose entries are all >= sizes[n].
double ubr_interval(std::span<const int> sizes, int base_duration,
                    const ReliabilityContext& ctx);

// A query answer: fixed vertex and edge sets that induce a valid community
// at every timestamp of [t_begin, t_end].
struct Community {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  Timestamp t_begin = 0;
  Timestamp t_end = 0;
  double score = 0.0;

  int duration() const { return static_cast<int>(t_end - t_begin + 1); }
  friend bool operator==(const Community&, const Community&) = default;
};

// Deterministic preference order: higher score (tolerance kScoreTol), then
// longer duration, earlier start, smaller vertex set, lexicographically
// smallest vertex list.
bool better_community(const Community& a, const Community& b);

// Checks that the community's fixed edge set induces a connected k-core
// containing q with every weight >= theta at every covered timestamp.
bool verify_community(const DynamicNetwork& net, const Community& c,
                      const QueryParams& params);

}  // namespace crcs
