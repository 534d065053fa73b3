#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "crcs/errors.hpp"

namespace crcs {

using VertexId = std::uint32_t;
using Timestamp = std::uint32_t;

// Undirected edge in canonical (u < v) form.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(VertexId a, VertexId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Packs a canonical edge into one 64-bit key for hashing.
inline std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}
inline std::uint64_t edge_key(const Edge& e) { return edge_key(e.u, e.v); }

// One weighted snapshot over a fixed vertex universe. Undirected, no self
// loops, no parallel edges, every weight in (0,1]. Isolated vertices carry no
// storage beyond an empty adjacency slot.
class GraphInstance {
 public:
  GraphInstance() = default;
  explicit GraphInstance(std::size_t num_vertices) : adj_(num_vertices) {}

  std::size_t size() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_; }

  int degree(VertexId v) const {
    return v < adj_.size() ? static_cast<int>(adj_[v].size()) : 0;
  }

  std::span<const std::pair<VertexId, double>> neighbors(VertexId v) const {
    if (v >= adj_.size()) return {};
    return adj_[v];
  }

  // Weight of (u,v), or 0 when the edge is absent. An absent edge behaves as
  // weight 0 everywhere downstream.
  double weight(VertexId u, VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const { return weight(u, v) > 0.0; }

  void add_edge(VertexId u, VertexId v, double w);
  void remove_edge(VertexId u, VertexId v);
  void set_weight(VertexId u, VertexId v, double w);

  // Bulk constructor for query-path subgraphs: one sort per adjacency list
  // instead of per-edge insertion. Edges must be canonical and duplicate
  // free; weights parallel the edge span.
  static GraphInstance from_edges(std::size_t num_vertices,
                                  std::span<const Edge> edge_set,
                                  std::span<const double> weights);

  // Calls fn(u, v, w) once per edge with u < v.
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (VertexId u = 0; u < adj_.size(); ++u)
      for (const auto& [v, w] : adj_[u])
        if (u < v) fn(u, v, w);
  }

  std::vector<Edge> edges() const;

  friend bool operator==(const GraphInstance&, const GraphInstance&) = default;

 private:
  void ensure_vertex(VertexId v);

  // Sorted by neighbor id; each edge stored from both endpoints.
  std::vector<std::vector<std::pair<VertexId, double>>> adj_;
  std::size_t edges_ = 0;
};

// Ordered sequence of snapshots sharing one vertex universe. Vertex ids are
// dense 0..|V|-1; the label table preserves the external identifiers.
struct DynamicNetwork {
  std::vector<GraphInstance> snapshots;
  std::vector<std::string> labels;
  std::unordered_map<std::string, VertexId> label_index;

  std::size_t vertex_count() const { return labels.size(); }
  std::size_t snapshot_count() const { return snapshots.size(); }

  const GraphInstance& at(Timestamp t) const {
    if (t >= snapshots.size()) throw ConfigError("snapshot index out of range");
    return snapshots[t];
  }
  GraphInstance& at(Timestamp t) {
    if (t >= snapshots.size()) throw ConfigError("snapshot index out of range");
    return snapshots[t];
  }

  std::optional<VertexId> find_label(const std::string& label) const {
    auto it = label_index.find(label);
    if (it == label_index.end()) return std::nullopt;
    return it->second;
  }
};

struct QueryParams {
  VertexId q = 0;
  int k = 1;
  double theta = 0.0;
  Timestamp t_begin = 0;
  Timestamp t_end = 0;
  double alpha = 1.0;

  int window_length() const { return static_cast<int>(t_end - t_begin + 1); }
  void validate(const DynamicNetwork& net) const;
};

enum class WeightMode { kGiven, kFrequency };
enum class NormalizeMode { kMinMax, kNone };

// Reads whitespace-separated `u v t w` lines (`w` optional under frequency
// mode, `#` comments ignored), sorts them chronologically, splits into
// num_snapshots equal-count partitions (the last takes the remainder), merges
// duplicate pairs within a partition (given: max weight, frequency: count)
// and min-max normalizes weights globally. Edges whose normalized weight is
// exactly 0 are dropped.
DynamicNetwork ingest_edge_stream(std::istream& in, std::size_t num_snapshots,
                                  WeightMode mode,
                                  NormalizeMode norm = NormalizeMode::kMinMax);

// Subgraph containing exactly `edge_set` and its endpoints, over the same
// vertex universe. Every edge must be present in g.
GraphInstance induced_by_edges(const GraphInstance& g,
                               std::span<const Edge> edge_set);

void save_network(const DynamicNetwork& net, std::ostream& out);
void save_network(const DynamicNetwork& net, const std::string& path);
DynamicNetwork load_network(std::istream& in);
DynamicNetwork load_network(const std::string& path);

}  // namespace crcs
