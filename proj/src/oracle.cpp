#include "crcs/oracle.hpp"

#include <algorithm>
#include <random>

namespace crcs {

CoreNumbers naive_core_numbers(const GraphInstance& g) {
  const std::size_t n = g.size();
  CoreNumbers core(n, 0);
  std::vector<char> alive(n, 0);
  for (VertexId v = 0; v < n; ++v) alive[v] = g.degree(v) > 0;

  for (int k = 1;; ++k) {
    // Peel everything below k to a fixpoint; survivors have core >= k.
    std::vector<char> remaining = alive;
    auto deg_in = [&](VertexId v) {
      int d = 0;
      for (const auto& [u, w] : g.neighbors(v))
        if (remaining[u]) ++d;
      return d;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (VertexId v = 0; v < n; ++v)
        if (remaining[v] && deg_in(v) < k) {
          remaining[v] = 0;
          changed = true;
        }
    }
    bool any = false;
    for (VertexId v = 0; v < n; ++v)
      if (remaining[v]) {
        core[v] = k;
        any = true;
      }
    if (!any) break;
    alive = remaining;
  }
  return core;
}

namespace {

struct EdgeGraph {
  std::vector<std::vector<VertexId>> adj;

  explicit EdgeGraph(std::size_t n, std::span<const Edge> edges) : adj(n) {
    for (const Edge& e : edges) {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  }
};

// q-component of the k-core of the given edge set, by definition-level
// peeling (independent of coredec).
std::optional<std::pair<std::vector<VertexId>, std::vector<Edge>>> naive_local_core(
    std::size_t n, std::span<const Edge> edges, int k, VertexId q) {
  EdgeGraph eg(n, edges);
  std::vector<char> remaining(n, 0);
  for (const Edge& e : edges) remaining[e.u] = remaining[e.v] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId v = 0; v < n; ++v) {
      if (!remaining[v]) continue;
      int d = 0;
      for (VertexId u : eg.adj[v])
        if (remaining[u]) ++d;
      if (d < k) {
        remaining[v] = 0;
        changed = true;
      }
    }
  }
  if (q >= n || !remaining[q]) return std::nullopt;

  std::vector<char> seen(n, 0);
  std::vector<VertexId> stack{q}, verts;
  seen[q] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    verts.push_back(v);
    for (VertexId u : eg.adj[v])
      if (remaining[u] && !seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  std::sort(verts.begin(), verts.end());
  std::vector<Edge> kept;
  for (const Edge& e : edges)
    if (seen[e.u] && seen[e.v]) kept.push_back(e);
  std::sort(kept.begin(), kept.end());
  return std::make_pair(std::move(verts), std::move(kept));
}

std::vector<Edge> eligible_edges(const GraphInstance& g, double theta) {
  std::vector<Edge> out;
  g.for_each_edge([&](VertexId u, VertexId v, double w) {
    if (w >= theta) out.push_back({u, v});
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

OracleResult brute_force_query(const DynamicNetwork& net, const QueryParams& params) {
  params.validate(net);
  if (net.vertex_count() > 15)
    throw ConfigError("oracle refuses graphs with more than 15 vertices");
  if (params.window_length() > 5)
    throw ConfigError("oracle refuses windows longer than 5 snapshots");

  ReliabilityContext ctx{max_kcore_size(net, params.k, params.t_begin, params.t_end),
                         params.window_length(), params.alpha};
  OracleResult result;
  if (ctx.v_k_max == 0) return result;

  std::vector<std::vector<Edge>> eligible;
  for (Timestamp t = params.t_begin; t <= params.t_end; ++t)
    eligible.push_back(eligible_edges(net.at(t), params.theta));

  for (Timestamp a = params.t_begin; a <= params.t_end; ++a) {
    std::vector<Edge> common = eligible[a - params.t_begin];
    for (Timestamp b = a; b <= params.t_end; ++b) {
      if (b > a) {
        std::vector<Edge> next;
        const std::vector<Edge>& other = eligible[b - params.t_begin];
        std::set_intersection(common.begin(), common.end(), other.begin(),
                              other.end(), std::back_inserter(next));
        common = std::move(next);
      }
      auto core = naive_local_core(net.vertex_count(), common, params.k, params.q);
      if (!core) continue;
      int duration = static_cast<int>(b - a + 1);
      double s = score(static_cast<double>(core->first.size()), duration, ctx);
      result.all_candidates.push_back({a, b, core->first, core->second, s});
      Community cand{core->first, core->second, a, b, s};
      if (!result.best || better_community(cand, *result.best))
        result.best = std::move(cand);
    }
  }
  if (result.best) result.best_score = result.best->score;
  return result;
}

bool oracle_subset_check(const DynamicNetwork& net, const QueryParams& params,
                         const OracleResult& result, int samples,
                         std::uint64_t seed) {
  ReliabilityContext ctx{max_kcore_size(net, params.k, params.t_begin, params.t_end),
                         params.window_length(), params.alpha};
  if (ctx.v_k_max == 0) return true;
  std::mt19937_64 rng(seed);

  for (Timestamp a = params.t_begin; a <= params.t_end; ++a) {
    for (Timestamp b = a; b <= params.t_end; ++b) {
      std::vector<Edge> common;
      net.at(a).for_each_edge([&](VertexId u, VertexId v, double w) {
        if (w < params.theta) return;
        for (Timestamp t = a + 1; t <= b; ++t)
          if (net.at(t).weight(u, v) < params.theta) return;
        common.push_back({u, v});
      });
      double reported = 0.0;
      for (const OracleCandidate& c : result.all_candidates)
        if (c.t_begin == a && c.t_end == b) reported = c.score;

      int duration = static_cast<int>(b - a + 1);
      for (int s = 0; s < samples; ++s) {
        std::vector<Edge> subset;
        for (const Edge& e : common)
          if (rng() & 1) subset.push_back(e);
        auto core =
            naive_local_core(net.vertex_count(), subset, params.k, params.q);
        if (!core) continue;
        Community cand{core->first, core->second, a, b, 0.0};
        if (!verify_community(net, cand, params)) return false;
        double sc = score(static_cast<double>(core->first.size()), duration, ctx);
        if (sc > reported + kScoreTol) return false;
      }
    }
  }
  return true;
}

}  // namespace crcs
