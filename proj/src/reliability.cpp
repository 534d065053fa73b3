#include "crcs/reliability.hpp"

#include <algorithm>
#include <cmath>

namespace crcs {

double score(double size, double duration, const ReliabilityContext& ctx) {
  if (ctx.v_k_max <= 0) throw ConfigError("reliability context has no k-core");
  if (ctx.window_len <= 0) throw ConfigError("reliability context has empty window");
  if (size <= 0.0 || duration <= 0.0) return 0.0;
  double nv = size / ctx.v_k_max;
  double nt = duration / ctx.window_len;
  double a2 = ctx.alpha * ctx.alpha;
  return (1.0 + a2) * (nv * nt) / (a2 * nv + nt);
}

int max_kcore_size(const DynamicNetwork& net, int k, Timestamp t_begin,
                   Timestamp t_end) {
  int best = 0;
  for (Timestamp t = t_begin; t <= t_end; ++t) {
    const GraphInstance& g = net.at(t);
    CoreNumbers core = core_decompose(g);
    std::vector<char> keep(g.size(), 0);
    for (VertexId v = 0; v < g.size(); ++v) keep[v] = core[v] >= k;
    std::vector<char> seen(g.size(), 0);
    for (VertexId s = 0; s < g.size(); ++s) {
      if (!keep[s] || seen[s]) continue;
      int count = 0;
      std::vector<VertexId> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++count;
        for (const auto& [u, w] : g.neighbors(v))
          if (keep[u] && !seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
      }
      best = std::max(best, count);
    }
  }
  return best;
}

double ubr_edge_set(std::size_t num_eligible_edges, int k, int duration,
                    const ReliabilityContext& ctx) {
  if (num_eligible_edges == 0 || duration <= 0) return 0.0;
  double bound = 2.0 * static_cast<double>(num_eligible_edges) / k;
  bound = std::min(bound, static_cast<double>(ctx.v_k_max));
  return score(bound, duration, ctx);
}

double ubr_interval(std::span<const int> sizes, int base_duration,
                    const ReliabilityContext& ctx) {
  double best = 0.0;
  for (std::size_t n = 0; n < sizes.size(); ++n) {
    if (sizes[n] <= 0) continue;
    std::size_t lo = n, hi = n;
    while (lo > 0 && sizes[lo - 1] >= sizes[n]) --lo;
    while (hi + 1 < sizes.size() && sizes[hi + 1] >= sizes[n]) ++hi;
    int lct = static_cast<int>(hi - lo + 1);
    best = std::max(best, score(sizes[n], base_duration + lct - 1, ctx));
  }
  return best;
}

bool better_community(const Community& a, const Community& b) {
  if (a.score > b.score + kScoreTol) return true;
  if (a.score < b.score - kScoreTol) return false;
  if (a.duration() != b.duration()) return a.duration() > b.duration();
  if (a.t_begin != b.t_begin) return a.t_begin < b.t_begin;
  if (a.vertices.size() != b.vertices.size())
    return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

bool verify_community(const DynamicNetwork& net, const Community& c,
                      const QueryParams& params) {
  if (c.vertices.empty() || c.edges.empty()) return false;
  if (!std::binary_search(c.vertices.begin(), c.vertices.end(), params.q))
    return false;
  if (c.t_begin > c.t_end || c.t_begin < params.t_begin || c.t_end > params.t_end)
    return false;

  std::vector<int> deg(net.vertex_count(), 0);
  for (const Edge& e : c.edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (VertexId v : c.vertices)
    if (deg[v] < params.k) return false;

  // Edge endpoints must be exactly the vertex set and the edge graph
  // connected.
  for (const Edge& e : c.edges)
    if (!std::binary_search(c.vertices.begin(), c.vertices.end(), e.u) ||
        !std::binary_search(c.vertices.begin(), c.vertices.end(), e.v))
      return false;
  {
    std::vector<std::vector<VertexId>> adj(net.vertex_count());
    for (const Edge& e : c.edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
    std::vector<char> seen(net.vertex_count(), 0);
    std::vector<VertexId> stack{params.q};
    seen[params.q] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      ++reached;
      for (VertexId u : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          stack.push_back(u);
        }
    }
    if (reached != c.vertices.size()) return false;
  }

  // Every edge must exist with weight >= theta at every covered timestamp.
  for (Timestamp t = c.t_begin; t <= c.t_end; ++t) {
    const GraphInstance& g = net.at(t);
    for (const Edge& e : c.edges)
      if (g.weight(e.u, e.v) < params.theta || !g.has_edge(e.u, e.v)) return false;
  }
  return true;
}

}  // namespace crcs
