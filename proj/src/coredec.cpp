#include "crcs/coredec.hpp"

#include <algorithm>

namespace crcs {

bool Subgraph::contains(VertexId v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

CoreNumbers core_decompose(const GraphInstance& g) {
  const std::size_t n = g.size();
  CoreNumbers core(n, 0);
  if (n == 0) return core;

  // Batagelj-Zaversnik bucket ordering.
  std::vector<int> deg(n);
  int max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 2, 0);
  for (VertexId v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (int d = 0; d <= max_deg; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<VertexId> order(n);
  std::vector<std::size_t> pos(n);
  {
    std::vector<std::size_t> next = bin;
    for (VertexId v = 0; v < n; ++v) {
      pos[v] = next[deg[v]]++;
      order[pos[v]] = v;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    VertexId v = order[i];
    core[v] = deg[v];
    for (const auto& [u, w] : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        // Swap u to the front of its bucket, then shrink its degree.
        std::size_t du = static_cast<std::size_t>(deg[u]);
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        VertexId head = order[pw];
        if (u != head) {
          order[pu] = head;
          order[pw] = u;
          pos[head] = pu;
          pos[u] = pw;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return core;
}

namespace {

// Component of q among `keep` vertices, with internal edges of g.
std::optional<Subgraph> component_of(const GraphInstance& g,
                                     const std::vector<char>& keep, VertexId q) {
  if (q >= g.size() || !keep[q]) return std::nullopt;
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexId> stack{q}, verts;
  seen[q] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    verts.push_back(v);
    for (const auto& [u, w] : g.neighbors(v)) {
      if (keep[u] && !seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
    }
  }
  std::sort(verts.begin(), verts.end());
  Subgraph out;
  out.vertices = std::move(verts);
  for (VertexId v : out.vertices)
    for (const auto& [u, w] : g.neighbors(v))
      if (v < u && seen[u]) out.edges.push_back({v, u});
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

}  // namespace

std::optional<Subgraph> local_max_kcore(const GraphInstance& g, int k, VertexId q) {
  if (q >= g.size()) return std::nullopt;
  CoreNumbers core = core_decompose(g);
  if (core[q] < k) return std::nullopt;
  std::vector<char> keep(g.size(), 0);
  for (VertexId v = 0; v < g.size(); ++v) keep[v] = core[v] >= k;
  return component_of(g, keep, q);
}

GraphInstance filter_by_weight(const GraphInstance& g, double theta) {
  GraphInstance out(g.size());
  g.for_each_edge([&](VertexId u, VertexId v, double w) {
    if (w >= theta) out.add_edge(u, v, w);
  });
  return out;
}

std::optional<Subgraph> theta_k_core(const GraphInstance& g, double theta, int k,
                                     VertexId q) {
  if (theta <= 0.0) return local_max_kcore(g, k, q);
  return local_max_kcore(filter_by_weight(g, theta), k, q);
}

}  // namespace crcs
