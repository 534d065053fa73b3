#pragma once

#include <optional>
#include <vector>

#include "crcs/graph.hpp"

namespace crcs {

// core[v] = largest k such that v belongs to a subgraph of minimum degree k.
using CoreNumbers = std::vector<int>;

// Vertex set plus internal edge set, both sorted. The result shape of every
// local community extraction.
struct Subgraph {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;

  bool contains(VertexId v) const;
  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

// Exact core numbers via bucket-queue min-degree peeling, O(|V|+|E|).
CoreNumbers core_decompose(const GraphInstance& g);

// Connected component containing q of the subgraph induced by vertices with
// core >= k, together with its internal edges. Absent when core(q) < k.
std::optional<Subgraph> local_max_kcore(const GraphInstance& g, int k, VertexId q);

// local_max_kcore of the subgraph keeping only edges with weight >= theta.
std::optional<Subgraph> theta_k_core(const GraphInstance& g, double theta, int k,
                                     VertexId q);

// Copy of g with edges below theta removed.
GraphInstance filter_by_weight(const GraphInstance& g, double theta);

}  // namespace crcs
