#include "crcs/wcf_search.hpp"

#include <algorithm>

namespace crcs {

namespace {

struct Interval {
  std::size_t begin, end;  // positions into the C(1,.) row, inclusive
  double ubr1 = 0.0;
};

// q-component k-core of the intersection of two edge sets.
std::optional<Subgraph> intersect_and_extract(const Subgraph& left,
                                              const Subgraph& right,
                                              std::size_t num_vertices, int k,
                                              VertexId q, SearchStats& st) {
  std::vector<Edge> common;
  std::set_intersection(left.edges.begin(), left.edges.end(), right.edges.begin(),
                        right.edges.end(), std::back_inserter(common));
  if (common.empty()) return std::nullopt;
  // Structure only; weights were already checked when C(1,.) was formed.
  std::vector<double> ones(common.size(), 1.0);
  ++st.core_extractions;
  return local_max_kcore(GraphInstance::from_edges(num_vertices, common, ones), k,
                         q);
}

std::optional<Community> run_dp(const DynamicNetwork& net, const QueryParams& params,
                                const std::vector<std::optional<Subgraph>>& c1,
                                const ReliabilityContext& ctx,
                                const SearchOptions& opts, SearchStats& st) {
  const std::size_t len = c1.size();

  std::vector<Interval> intervals;
  for (std::size_t i = 0; i < len;) {
    if (!c1[i]) {
      ++i;  // anchored timestamp: no community exists here
      continue;
    }
    std::size_t j = i;
    while (j + 1 < len && c1[j + 1]) ++j;
    intervals.push_back({i, j, 0.0});
    i = j + 1;
  }
  for (Interval& iv : intervals) {
    std::vector<int> sizes;
    for (std::size_t x = iv.begin; x <= iv.end; ++x)
      sizes.push_back(static_cast<int>(c1[x]->vertices.size()));
    iv.ubr1 = ubr_interval(sizes, 1, ctx);
  }
  std::stable_sort(intervals.begin(), intervals.end(),
                   [](const Interval& a, const Interval& b) { return a.ubr1 > b.ubr1; });

  std::optional<Community> best;
  double max_score = 0.0;

  for (const Interval& iv : intervals) {
    if (opts.interval_prune && best && iv.ubr1 <= max_score - kScoreTol) {
      ++st.pruned;
      continue;
    }
    const std::size_t width = iv.end - iv.begin + 1;
    std::vector<std::optional<Subgraph>> prev(width), cur(width);

    for (std::size_t d = 1; d <= width; ++d) {
      std::vector<int> sizes(width, 0);
      for (std::size_t x = iv.begin; x <= iv.end; ++x) {
        std::size_t pos = x - iv.begin;
        // C(d, t_x) needs d timestamps inside the interval.
        if (pos + 1 < d) {
          cur[pos] = std::nullopt;
          continue;
        }
        if (d == 1) {
          cur[pos] = c1[x];
        } else if (!prev[pos - 1] || !prev[pos]) {
          cur[pos] = std::nullopt;
        } else {
          cur[pos] = intersect_and_extract(*prev[pos - 1], *prev[pos],
                                           net.vertex_count(), params.k, params.q,
                                           st);
        }
        if (!cur[pos]) continue;
        sizes[pos] = static_cast<int>(cur[pos]->vertices.size());

        Timestamp t_end = params.t_begin + static_cast<Timestamp>(x);
        Community cand{cur[pos]->vertices, cur[pos]->edges,
                       t_end - static_cast<Timestamp>(d - 1), t_end,
                       score(static_cast<double>(sizes[pos]),
                             static_cast<double>(d), ctx)};
        if (!best || better_community(cand, *best)) {
          best = std::move(cand);
          max_score = best->score;
        }
      }
      if (opts.ubr_prune) {
        double bound = ubr_interval(sizes, static_cast<int>(d), ctx);
        if (best && bound <= max_score - kScoreTol) {
          ++st.pruned;
          break;
        }
      }
      prev.swap(cur);
    }
  }
  return best;
}

std::vector<std::optional<Subgraph>> fetch_c1_row(const DynamicNetwork& net,
                                                  const WcfIndex& idx,
                                                  const QueryParams& params) {
  std::vector<std::optional<Subgraph>> c1;
  c1.reserve(params.window_length());
  for (Timestamp t = params.t_begin; t <= params.t_end; ++t)
    c1.push_back(query_c1(idx, net, params.k, params.theta, t, params.q));
  return c1;
}

void check_match(const DynamicNetwork& net, const WcfIndex& idx) {
  if (idx.vertex_count() != net.vertex_count() ||
      idx.snapshot_count() != net.snapshot_count())
    throw ConfigError("index was not built over this network");
}

}  // namespace

// The normalizer comes from the index rather than a network rescan; the
// build captured it per (k, t).
static int indexed_vkmax(const WcfIndex& idx, const QueryParams& params) {
  int vkmax = 0;
  for (Timestamp t = params.t_begin; t <= params.t_end; ++t)
    vkmax = std::max(vkmax, idx.max_core_component(params.k, t));
  return vkmax;
}

std::optional<Community> wcf_query(const DynamicNetwork& net, const WcfIndex& idx,
                                   const QueryParams& params,
                                   const SearchOptions& opts, SearchStats* stats) {
  params.validate(net);
  check_match(net, idx);
  SearchStats local;
  SearchStats& st = stats ? *stats : local;

  ReliabilityContext ctx{indexed_vkmax(idx, params), params.window_length(),
                         params.alpha};
  if (ctx.v_k_max == 0) return std::nullopt;

  return run_dp(net, params, fetch_c1_row(net, idx, params), ctx, opts, st);
}

std::vector<std::pair<double, std::optional<Community>>> alpha_sweep(
    const DynamicNetwork& net, const WcfIndex& idx, const QueryParams& params,
    const std::vector<double>& alphas) {
  params.validate(net);
  check_match(net, idx);

  int vkmax = indexed_vkmax(idx, params);
  std::vector<std::pair<double, std::optional<Community>>> out;
  if (vkmax == 0) {
    for (double a : alphas) out.emplace_back(a, std::nullopt);
    return out;
  }

  auto c1 = fetch_c1_row(net, idx, params);
  for (double a : alphas) {
    if (a < 0.0) throw ConfigError("alpha must be non-negative");
    ReliabilityContext ctx{vkmax, params.window_length(), a};
    SearchStats st;
    out.emplace_back(a, run_dp(net, params, c1, ctx, SearchOptions{}, st));
  }
  return out;
}

}  // namespace crcs
