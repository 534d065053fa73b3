#include "crcs/eef.hpp"

#include <algorithm>
#include <numeric>

namespace crcs {

ScanResult scan_snapshot(const GraphInstance& g, const QueryParams& params,
                         const EligibleEdgeState& prev,
                         const ReliabilityContext& ctx) {
  ScanResult out;
  const VertexId q = params.q;
  if (q >= g.size()) return out;

  // Memoized theta-filtered degrees; hubs get visited from many neighbors.
  std::vector<int> deg_cache(g.size(), -1);
  auto filtered_degree = [&](VertexId v) {
    if (deg_cache[v] >= 0) return deg_cache[v];
    int d = 0;
    for (const auto& [u, w] : g.neighbors(v))
      if (w >= params.theta) ++d;
    return deg_cache[v] = d;
  };
  if (filtered_degree(q) < params.k) return out;

  std::vector<char> seen(g.size(), 0);
  std::vector<VertexId> queue{q};
  seen[q] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    VertexId v = queue[head];
    for (const auto& [u, w] : g.neighbors(v)) {
      if (w < params.theta) continue;
      if (filtered_degree(u) < params.k) continue;  // cannot sit in any k-core
      if (v < u || !seen[u]) out.state.eligible.push_back(make_edge(v, u));
      if (!seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  // The traversal above may record an edge from both endpoints; dedupe.
  std::sort(out.state.eligible.begin(), out.state.eligible.end());
  out.state.eligible.erase(
      std::unique(out.state.eligible.begin(), out.state.eligible.end()),
      out.state.eligible.end());

  for (const Edge& e : out.state.eligible) {
    auto it = prev.lasting.find(edge_key(e));
    out.state.lasting[edge_key(e)] = it == prev.lasting.end() ? 1 : it->second + 1;
  }
  out.ubr1 = ubr_edge_set(out.state.eligible.size(), params.k, 1, ctx);
  return out;
}

std::optional<Community> eef_query(const DynamicNetwork& net,
                                   const QueryParams& params,
                                   const SearchOptions& opts, SearchStats* stats) {
  params.validate(net);
  SearchStats local;
  SearchStats& st = stats ? *stats : local;

  ReliabilityContext ctx{max_kcore_size(net, params.k, params.t_begin, params.t_end),
                         params.window_length(), params.alpha};
  if (ctx.v_k_max == 0) return std::nullopt;

  // Chronological scan pass: eligible sets, lasting times, duration-1 bounds.
  std::vector<ScanResult> scans;
  scans.reserve(params.window_length());
  EligibleEdgeState empty;
  for (Timestamp t = params.t_begin; t <= params.t_end; ++t) {
    const EligibleEdgeState& prev = scans.empty() ? empty : scans.back().state;
    scans.push_back(scan_snapshot(net.at(t), params, prev, ctx));
  }

  // Best-first over end timestamps by their duration-1 bound.
  std::vector<std::size_t> order(scans.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scans[a].ubr1 > scans[b].ubr1;
  });

  const std::size_t min_edges =
      static_cast<std::size_t>(params.k) * (params.k + 1) / 2;
  std::optional<Community> best;
  double max_score = 0.0;

  for (std::size_t idx : order) {
    Timestamp tn = params.t_begin + static_cast<Timestamp>(idx);
    const EligibleEdgeState& state = scans[idx].state;
    int max_d = static_cast<int>(tn - params.t_begin + 1);
    for (int d = 1; d <= max_d; ++d) {
      std::vector<Edge> lasting_edges;
      for (const Edge& e : state.eligible)
        if (state.lasting.at(edge_key(e)) >= d) lasting_edges.push_back(e);

      if (opts.min_edge_prune && lasting_edges.size() < min_edges) {
        ++st.pruned;
        continue;
      }
      double bound = ubr_edge_set(lasting_edges.size(), params.k, d, ctx);
      // A bound equal to the incumbent score may still hide a candidate that
      // wins the tie-break, so only strictly dominated pairs are skipped.
      if (opts.ubr_prune && best && bound <= max_score - kScoreTol) {
        ++st.pruned;
        continue;
      }

      GraphInstance induced = induced_by_edges(net.at(tn), lasting_edges);
      ++st.core_extractions;
      auto core = local_max_kcore(induced, params.k, params.q);
      if (!core) continue;

      Community cand{core->vertices, core->edges,
                     tn - static_cast<Timestamp>(d - 1), tn,
                     score(static_cast<double>(core->vertices.size()), d, ctx)};
      // Lasting times already guarantee eligibility across the interval; the
      // full re-check guards the missing-edge-as-weight-zero convention.
      if (!verify_community(net, cand, params)) continue;
      if (!best || better_community(cand, *best)) {
        best = std::move(cand);
        max_score = best->score;
      }
    }
  }
  return best;
}

}  // namespace crcs
