#include "crcs/metrics.hpp"

#include <algorithm>

namespace crcs {

QualityReport evaluate(const DynamicNetwork& net, const Community& community) {
  if (community.vertices.size() < 2)
    throw ConfigError("density undefined for communities below two vertices");
  if (community.t_end >= net.snapshot_count() || community.t_begin > community.t_end)
    throw ConfigError("community interval outside the network");

  std::vector<char> member(net.vertex_count(), 0);
  for (VertexId v : community.vertices) member[v] = 1;
  const double nc = static_cast<double>(community.vertices.size());

  QualityReport report;
  for (Timestamp t = community.t_begin; t <= community.t_end; ++t) {
    const GraphInstance& g = net.at(t);

    GraphInstance sub(net.vertex_count());
    std::size_t cut = 0;
    std::size_t vol_in = 0, vol_out = 0;
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
      if (member[v])
        vol_in += g.degree(v);
      else
        vol_out += g.degree(v);
    }
    g.for_each_edge([&](VertexId u, VertexId v, double w) {
      if (member[u] && member[v])
        sub.add_edge(u, v, w);
      else if (member[u] != member[v])
        ++cut;
    });

    SnapshotQuality q;
    q.t = t;
    q.size = community.vertices.size();
    q.density = 2.0 * sub.edge_count() / (nc * (nc - 1.0));
    CoreNumbers core = core_decompose(sub);
    double core_sum = 0.0;
    for (VertexId v : community.vertices) core_sum += core[v];
    q.avg_core = core_sum / nc;
    q.conductance =
        cut == 0 ? 0.0
                 : static_cast<double>(cut) /
                       static_cast<double>(std::min(vol_in, vol_out));
    report.per_snapshot.push_back(q);
  }

  const double nt = static_cast<double>(report.per_snapshot.size());
  for (const SnapshotQuality& q : report.per_snapshot) {
    report.ass += static_cast<double>(q.size) / nt;
    report.asd += q.density / nt;
    report.ascore += q.avg_core / nt;
    report.ascond += q.conductance / nt;
  }
  return report;
}

}  // namespace crcs
