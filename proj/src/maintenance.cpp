#include "crcs/maintenance.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <sstream>

namespace crcs {

namespace {

std::vector<VertexId> equal_core_region(const GraphInstance& g,
                                        const CoreNumbers& core, VertexId u,
                                        bool pure) {
  if (u >= g.size()) return {};
  const int target = core[u];
  auto qualifies = [&](VertexId w) {
    if (core[w] != target) return false;
    if (!pure) return true;
    int strong = 0;
    for (const auto& [nb, wt] : g.neighbors(w))
      if (core[nb] >= target) ++strong;
    return strong > target;
  };
  if (!qualifies(u)) return {};
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexId> stack{u}, out;
  seen[u] = 1;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (const auto& [nb, wt] : g.neighbors(v))
      if (!seen[nb] && qualifies(nb)) {
        seen[nb] = 1;
        stack.push_back(nb);
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<VertexId> subcore(const GraphInstance& g, VertexId u) {
  return equal_core_region(g, core_decompose(g), u, false);
}

std::vector<VertexId> purecore(const GraphInstance& g, VertexId u) {
  return equal_core_region(g, core_decompose(g), u, true);
}

// Maintenance accesses index internals directly.
class IndexMaintainer {
 public:
  IndexMaintainer(WcfIndex& idx, DynamicNetwork& net, Timestamp t)
      : idx_(idx), net_(net), t_(t) {}

  MaintenanceReport apply(const std::vector<EdgeUpdate>& updates) {
    MaintenanceReport report;
    for (const EdgeUpdate& up : updates) apply_one(up, report);
    std::sort(report.changed.begin(), report.changed.end());
    report.changed.erase(std::unique(report.changed.begin(), report.changed.end()),
                         report.changed.end());
    std::sort(report.candidates.begin(), report.candidates.end());
    report.candidates.erase(
        std::unique(report.candidates.begin(), report.candidates.end()),
        report.candidates.end());
    return report;
  }

 private:
  // Candidate vertices whose thresholds the update rules allow to move: per
  // touched grid level, the purecore (weight increases) or subcore (weight
  // decreases) of the lower-core endpoint, using pre-update core numbers on
  // the graph variant that carries the edge. Edge insertion and deletion are
  // the limit cases with an absent-weight sentinel of 0.
  std::vector<VertexId> affected_set(const GraphInstance& pre_graph,
                                     const GraphInstance& post_graph,
                                     VertexId u, VertexId v, double w_old,
                                     double w_new) const {
    const bool increase = w_new > w_old;
    const ThetaGrid& grid = idx_.grid();
    std::vector<VertexId> out{u, v};
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
      double level = grid.values[gi];
      // The filtered graph at `level` changes iff the edge is present on one
      // side of the update only.
      bool present_before = w_old > 0.0 && w_old >= level;
      bool present_after = w_new > 0.0 && w_new >= level;
      if (present_before == present_after) continue;

      const GraphInstance& carrier = increase ? post_graph : pre_graph;
      GraphInstance filtered = filter_by_weight(carrier, level);
      CoreNumbers pre_cores = core_decompose(filter_by_weight(pre_graph, level));
      std::vector<VertexId> roots;
      if (pre_cores[u] < pre_cores[v])
        roots = {u};
      else if (pre_cores[v] < pre_cores[u])
        roots = {v};
      else
        roots = {u, v};
      for (VertexId root : roots) {
        std::vector<VertexId> region =
            equal_core_region(filtered, pre_cores, root, increase);
        out.insert(out.end(), region.begin(), region.end());
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  void apply_one(const EdgeUpdate& up, MaintenanceReport& report) {
    GraphInstance& g = net_.at(t_);
    const VertexId u = up.u, v = up.v;
    double w_old = g.weight(u, v);
    double w_new = 0.0;

    switch (up.kind) {
      case EdgeUpdate::Kind::kInsert:
        if (w_old > 0.0)
          throw DeltaError("insert of existing edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
        w_new = up.weight;
        break;
      case EdgeUpdate::Kind::kDelete:
        if (w_old <= 0.0)
          throw DeltaError("delete of absent edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
        w_new = 0.0;
        break;
      case EdgeUpdate::Kind::kReweight:
        if (w_old <= 0.0)
          throw DeltaError("reweight of absent edge (" + std::to_string(u) + "," +
                           std::to_string(v) + ")");
        w_new = up.weight;
        break;
    }

    GraphInstance pre_graph = g;
    if (up.kind == EdgeUpdate::Kind::kInsert)
      g.add_edge(u, v, w_new);
    else if (up.kind == EdgeUpdate::Kind::kDelete)
      g.remove_edge(u, v);
    else
      g.set_weight(u, v, w_new);

    if (w_old == w_new) return;  // no-op reweight keeps the index untouched

    std::vector<VertexId> affected = affected_set(pre_graph, g, u, v, w_old, w_new);

    // Old thresholds, -1 for unindexed levels.
    const int old_kmax = t_ < idx_.forests_.size()
                             ? static_cast<int>(idx_.forests_[t_].size())
                             : 0;
    auto old_thres = [&](int k, VertexId w) {
      auto ti = idx_.threshold_index(k, t_, w);
      return ti ? *ti : -1;
    };

    std::vector<std::vector<int>> fresh = compute_thresholds(g, idx_.grid());
    const int new_kmax = static_cast<int>(fresh.size());
    const ThetaGrid& grid = idx_.grid();
    const int gi_old = w_old > 0.0 ? grid.floor_index(w_old) : -1;
    const int gi_new = w_new > 0.0 ? grid.floor_index(w_new) : -1;
    const bool increase = w_new > w_old;

    // Window the candidates by stored threshold. Grid flooring keeps both
    // bounds conservative: a reweight from w_old to w_new can only move
    // thresholds whose true value lies between the two weights.
    const int max_k = std::max(old_kmax, new_kmax);
    for (int k = 1; k <= max_k; ++k) {
      for (VertexId w : affected) {
        int stored = old_thres(k, w);
        bool candidate;
        if (increase) {
          int lo = w_old > 0.0 ? gi_old : std::numeric_limits<int>::min();
          candidate = stored >= lo && stored <= gi_new;  // -1 = level may appear
        } else {
          int lo = w_new > 0.0 ? gi_new : 0;
          candidate = stored >= lo && stored <= gi_old;
        }
        if (candidate) report.candidates.emplace_back(k, w);
      }
    }

    // Diff against the fresh tables; any difference marks that level dirty.
    std::vector<char> dirty(max_k + 1, 0);
    for (int k = 1; k <= max_k; ++k) {
      for (VertexId w = 0; w < net_.vertex_count(); ++w) {
        int stored = old_thres(k, w);
        int now = (k <= new_kmax) ? fresh[k - 1][w] : -1;
        if (now != stored) {
          report.changed.emplace_back(k, w);
          dirty[k] = 1;
        }
      }
    }
    for (int k = std::min(old_kmax, new_kmax) + 1; k <= max_k; ++k) dirty[k] = 1;

    // Appearing or vanishing edges also move node grouping and parent links
    // at every level where both endpoints are indexed, even when no
    // threshold moves: connectivity between indexed vertices uses all edges.
    if ((w_old > 0.0) != (w_new > 0.0)) {
      for (int k = 1; k <= max_k; ++k) {
        bool linked_before = old_thres(k, u) >= 0 && old_thres(k, v) >= 0;
        bool linked_after = k <= new_kmax && fresh[k - 1][u] >= 0 &&
                            fresh[k - 1][v] >= 0;
        if (linked_before || linked_after) dirty[k] = 1;
      }
    }

    idx_.forests_[t_].resize(new_kmax);
    for (int k = 1; k <= new_kmax; ++k)
      if (dirty[k]) idx_.forests_[t_][k - 1] = build_forest(g, fresh[k - 1]);
    idx_.core_component_max_[t_] = core_component_sizes(g);
    idx_.reindex();
  }

  WcfIndex& idx_;
  DynamicNetwork& net_;
  Timestamp t_;
};

MaintenanceReport apply_delta(WcfIndex& idx, DynamicNetwork& net,
                              const GraphDelta& delta) {
  if (delta.t >= net.snapshot_count())
    throw ConfigError("delta targets snapshot " + std::to_string(delta.t) +
                      " outside the network");
  if (idx.snapshot_count() != net.snapshot_count() ||
      idx.vertex_count() != net.vertex_count())
    throw ConfigError("index was not built over this network");
  for (const EdgeUpdate& up : delta.updates) {
    if (up.u == up.v) throw DeltaError("self loop in delta");
    if (up.u >= net.vertex_count() || up.v >= net.vertex_count())
      throw DeltaError("vertex out of range in delta");
    if (up.kind != EdgeUpdate::Kind::kDelete &&
        (!(up.weight > 0.0) || up.weight > 1.0))
      throw DeltaError("weight outside (0,1] in delta");
  }
  IndexMaintainer maintainer(idx, net, delta.t);
  return maintainer.apply(delta.updates);
}

GraphDelta parse_delta(std::istream& in, Timestamp t, const DynamicNetwork& net) {
  GraphDelta delta;
  delta.t = t;
  std::string line;
  std::size_t line_no = 0;
  auto resolve = [&](const std::string& label) {
    auto id = net.find_label(label);
    if (!id) throw ParseError(line_no, "unknown vertex label `" + label + "`");
    return *id;
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string op, su, sv;
    if (!(ls >> op >> su >> sv)) throw ParseError(line_no, "expected `OP u v [w]`");
    EdgeUpdate up;
    up.u = resolve(su);
    up.v = resolve(sv);
    if (op == "I" || op == "W") {
      up.kind = op == "I" ? EdgeUpdate::Kind::kInsert : EdgeUpdate::Kind::kReweight;
      if (!(ls >> up.weight)) throw ParseError(line_no, "missing weight");
    } else if (op == "D") {
      up.kind = EdgeUpdate::Kind::kDelete;
    } else {
      throw ParseError(line_no, "unknown op `" + op + "`");
    }
    delta.updates.push_back(up);
  }
  return delta;
}

}  // namespace crcs
