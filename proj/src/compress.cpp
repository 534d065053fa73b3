#include "crcs/compress.hpp"

#include <map>

namespace crcs {

long long space_gain(std::size_t node_size, std::size_t frequency) {
  return static_cast<long long>(frequency) *
             (static_cast<long long>(node_size) - 1) -
         static_cast<long long>(node_size);
}

void compress(WcfIndex& idx) {
  if (idx.compressed()) return;

  std::map<std::vector<VertexId>, std::size_t> freq;
  for (Timestamp t = 0; t < idx.snapshot_count(); ++t)
    for (int k = 1; k <= idx.k_max(t); ++k)
      for (const ThetaTreeNode& node : idx.forest(k, t).nodes)
        ++freq[node.vertices];

  // Deterministic virtual ids: ascending canonical vertex lists.
  std::map<std::vector<VertexId>, std::int32_t> virtual_id;
  for (const auto& [set, f] : freq)
    if (space_gain(set.size(), f) > 0) {
      std::int32_t id = static_cast<std::int32_t>(idx.aux_.sets.size());
      idx.aux_.sets.push_back(set);
      virtual_id.emplace(set, id);
    }
  if (virtual_id.empty()) return;

  for (auto& per_t : idx.forests_)
    for (ThetaForest& f : per_t)
      for (ThetaTreeNode& node : f.nodes) {
        auto it = virtual_id.find(node.vertices);
        if (it == virtual_id.end()) continue;
        node.virtual_ref = it->second;
        node.vertices.clear();
        node.vertices.shrink_to_fit();
      }
}

void expand(WcfIndex& idx) {
  for (auto& per_t : idx.forests_)
    for (ThetaForest& f : per_t)
      for (ThetaTreeNode& node : f.nodes) {
        if (!node.is_virtual()) continue;
        if (node.virtual_ref < 0 ||
            static_cast<std::size_t>(node.virtual_ref) >= idx.aux_.sets.size())
          throw IoError("dangling virtual node reference");
        node.vertices = idx.aux_.sets[node.virtual_ref];
        node.virtual_ref = kNoVirtual;
      }
  idx.aux_.sets.clear();
}

}  // namespace crcs
