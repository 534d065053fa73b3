#include "crcs/wcf_index.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace crcs {

ThetaGrid ThetaGrid::standard(int divisions) {
  if (divisions < 1) throw ConfigError("grid needs at least one division");
  ThetaGrid grid;
  grid.values.reserve(divisions + 1);
  for (int i = 0; i <= divisions; ++i)
    grid.values.push_back(static_cast<double>(i) / divisions);
  return grid;
}

void ThetaGrid::validate() const {
  if (values.size() < 2 || values.front() != 0.0 || values.back() != 1.0 ||
      !std::is_sorted(values.begin(), values.end()))
    throw ConfigError("theta grid must be sorted from 0 to 1");
  if (values.size() > 256) throw ConfigError("theta grid limited to 256 values");
}

int ThetaGrid::floor_index(double theta) const {
  // Weights carry a few ulp of noise after normalization; snap to the grid.
  constexpr double eps = 1e-9;
  int idx = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] <= theta + eps) idx = static_cast<int>(i);
  return idx;
}

bool ThetaGrid::on_grid(double theta) const {
  constexpr double eps = 1e-9;
  return std::abs(values[floor_index(theta)] - theta) <= eps;
}

int WcfIndex::k_max(Timestamp t) const {
  if (t >= forests_.size()) throw ConfigError("snapshot index out of range");
  return static_cast<int>(forests_[t].size());
}

const ThetaForest& WcfIndex::forest(int k, Timestamp t) const {
  if (t >= forests_.size() || k < 1 || k > static_cast<int>(forests_[t].size()))
    throw ConfigError("no forest for k=" + std::to_string(k) + " t=" +
                      std::to_string(t));
  return forests_[t][k - 1];
}

ThetaForest& WcfIndex::forest(int k, Timestamp t) {
  return const_cast<ThetaForest&>(std::as_const(*this).forest(k, t));
}

NodeId WcfIndex::locate(int k, Timestamp t, VertexId v) const {
  if (t >= locator_.size() || k < 1 ||
      k > static_cast<int>(locator_[t].size()) || v >= vertex_count_)
    return kNoNode;
  return locator_[t][k - 1][v];
}

std::optional<int> WcfIndex::threshold_index(int k, Timestamp t, VertexId v) const {
  NodeId id = locate(k, t, v);
  if (id == kNoNode) return std::nullopt;
  return forests_[t][k - 1].nodes[id].theta_idx;
}

int WcfIndex::max_core_component(int k, Timestamp t) const {
  if (t >= core_component_max_.size()) throw ConfigError("snapshot out of range");
  if (k < 1 || k > static_cast<int>(core_component_max_[t].size())) return 0;
  return core_component_max_[t][k - 1];
}

const std::vector<VertexId>& WcfIndex::vertices_of(const ThetaTreeNode& node) const {
  if (!node.is_virtual()) return node.vertices;
  if (node.virtual_ref < 0 ||
      static_cast<std::size_t>(node.virtual_ref) >= aux_.sets.size())
    throw IoError("dangling virtual node reference");
  return aux_.sets[node.virtual_ref];
}

std::size_t WcfIndex::stored_slots() const {
  std::size_t slots = 0;
  for (const auto& per_t : forests_)
    for (const ThetaForest& f : per_t)
      for (const ThetaTreeNode& node : f.nodes) slots += vertices_of(node).size();
  return slots;
}

std::size_t WcfIndex::storage_slots() const {
  std::size_t slots = 0;
  for (const auto& per_t : forests_)
    for (const ThetaForest& f : per_t)
      for (const ThetaTreeNode& node : f.nodes)
        slots += node.is_virtual() ? 1 : node.vertices.size();
  for (const auto& set : aux_.sets) slots += set.size();
  return slots;
}

void WcfIndex::reindex() {
  locator_.assign(forests_.size(), {});
  for (Timestamp t = 0; t < forests_.size(); ++t) {
    locator_[t].assign(forests_[t].size(),
                       std::vector<NodeId>(vertex_count_, kNoNode));
    for (std::size_t ki = 0; ki < forests_[t].size(); ++ki) {
      ThetaForest& f = forests_[t][ki];
      for (NodeId id = 0; id < static_cast<NodeId>(f.nodes.size()); ++id) {
        f.nodes[id].children.clear();
      }
      for (NodeId id = 0; id < static_cast<NodeId>(f.nodes.size()); ++id) {
        ThetaTreeNode& node = f.nodes[id];
        if (node.parent != kNoNode) f.nodes[node.parent].children.push_back(id);
        for (VertexId v : vertices_of(node)) locator_[t][ki][v] = id;
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Construction

std::vector<std::vector<int>> compute_thresholds(const GraphInstance& g,
                                                 const ThetaGrid& grid) {
  const std::size_t n = g.size();
  CoreNumbers full = core_decompose(g);
  int kmax = 0;
  for (VertexId v = 0; v < n; ++v) kmax = std::max(kmax, full[v]);

  std::vector<std::vector<int>> thres(kmax, std::vector<int>(n, -1));
  CoreNumbers prev(n, 0);
  for (int gi = static_cast<int>(grid.size()) - 1; gi >= 0; --gi) {
    CoreNumbers cur = gi == 0 ? full
                              : core_decompose(filter_by_weight(g, grid.values[gi]));
    for (VertexId v = 0; v < n; ++v)
      for (int k = prev[v] + 1; k <= cur[v]; ++k) thres[k - 1][v] = gi;
    prev = std::move(cur);
  }
  return thres;
}

ThetaForest build_forest(const GraphInstance& g, const std::vector<int>& thres) {
  ThetaForest forest;
  const std::size_t n = g.size();
  std::vector<NodeId> node_of(n, kNoNode);

  int max_gi = -1;
  for (VertexId v = 0; v < n; ++v) max_gi = std::max(max_gi, thres[v]);

  for (int gi = max_gi; gi >= 0; --gi) {
    // Group the level-gi vertices by connectivity inside the subgraph
    // induced by vertices of threshold >= gi: paths may pass through
    // higher-threshold vertices.
    std::vector<char> high(n, 0);
    bool any = false;
    for (VertexId v = 0; v < n; ++v) {
      high[v] = thres[v] >= gi;
      any = any || (thres[v] == gi);
    }
    if (!any) continue;

    std::vector<char> seen(n, 0);
    for (VertexId s = 0; s < n; ++s) {
      if (thres[s] != gi || seen[s]) continue;
      std::vector<VertexId> stack{s}, members;
      seen[s] = 1;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        if (thres[v] == gi) members.push_back(v);
        for (const auto& [u, w] : g.neighbors(v))
          if (high[u] && !seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
      }
      std::sort(members.begin(), members.end());

      NodeId id = static_cast<NodeId>(forest.nodes.size());
      ThetaTreeNode node;
      node.theta_idx = static_cast<std::int16_t>(gi);
      node.vertices = members;
      forest.nodes.push_back(std::move(node));
      for (VertexId v : members) node_of[v] = id;

      // Adopt the trees of every higher-threshold group adjacent to this
      // one: their roots gain this node as parent.
      for (VertexId v : members) {
        for (const auto& [u, w] : g.neighbors(v)) {
          if (thres[u] <= gi || node_of[u] == kNoNode) continue;
          NodeId root = node_of[u];
          while (forest.nodes[root].parent != kNoNode)
            root = forest.nodes[root].parent;
          if (root != id) forest.nodes[root].parent = id;
        }
      }
    }
  }

  for (NodeId id = 0; id < static_cast<NodeId>(forest.nodes.size()); ++id)
    if (forest.nodes[id].parent != kNoNode)
      forest.nodes[forest.nodes[id].parent].children.push_back(id);
  return forest;
}

namespace {

std::vector<ThetaForest> build_snapshot_forests(const GraphInstance& g,
                                                const ThetaGrid& grid) {
  std::vector<std::vector<int>> thres = compute_thresholds(g, grid);
  std::vector<ThetaForest> out;
  out.reserve(thres.size());
  for (const auto& per_k : thres) out.push_back(build_forest(g, per_k));
  return out;
}

}  // namespace

std::vector<int> core_component_sizes(const GraphInstance& g) {
  CoreNumbers core = core_decompose(g);
  int kmax = 0;
  for (VertexId v = 0; v < g.size(); ++v) kmax = std::max(kmax, core[v]);
  std::vector<int> out(kmax, 0);
  for (int k = 1; k <= kmax; ++k) {
    std::vector<char> seen(g.size(), 0);
    for (VertexId s = 0; s < g.size(); ++s) {
      if (core[s] < k || seen[s]) continue;
      int count = 0;
      std::vector<VertexId> stack{s};
      seen[s] = 1;
      while (!stack.empty()) {
        VertexId v = stack.back();
        stack.pop_back();
        ++count;
        for (const auto& [u, w] : g.neighbors(v))
          if (core[u] >= k && !seen[u]) {
            seen[u] = 1;
            stack.push_back(u);
          }
      }
      out[k - 1] = std::max(out[k - 1], count);
    }
  }
  return out;
}

WcfIndex build_wcf_index(const DynamicNetwork& net, const ThetaGrid& grid,
                         int threads) {
  grid.validate();
  WcfIndex idx;
  idx.grid_ = grid;
  idx.vertex_count_ = net.vertex_count();
  idx.forests_.resize(net.snapshot_count());

  const std::size_t nt = net.snapshot_count();
  idx.core_component_max_.resize(nt);
  auto build_one = [&](std::size_t t) {
    idx.forests_[t] = build_snapshot_forests(net.at(t), grid);
    idx.core_component_max_[t] = core_component_sizes(net.at(t));
  };
  if (threads <= 1 || nt <= 1) {
    for (Timestamp t = 0; t < nt; ++t) build_one(t);
  } else {
    std::size_t workers = std::min<std::size_t>(threads, nt);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t t = next.fetch_add(1); t < nt; t = next.fetch_add(1))
          build_one(t);
      });
    for (auto& th : pool) th.join();
  }
  idx.reindex();
  return idx;
}

// ---------------------------------------------------------------------------
// Point query

std::optional<Subgraph> query_c1(const WcfIndex& idx, const DynamicNetwork& net,
                                 int k, double theta, Timestamp t, VertexId q) {
  if (t >= idx.snapshot_count() || k < 1) return std::nullopt;
  if (k > idx.k_max(t)) return std::nullopt;
  NodeId start = idx.locate(k, t, q);
  if (start == kNoNode) return std::nullopt;

  const ThetaForest& forest = idx.forest(k, t);
  int gi = idx.grid().floor_index(theta);
  if (forest.nodes[start].theta_idx < gi) return std::nullopt;

  // Region of tree nodes at or above the grid floor, connected to q's node.
  std::vector<NodeId> stack{start};
  std::vector<char> visited(forest.nodes.size(), 0);
  visited[start] = 1;
  std::vector<VertexId> collected;
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    const ThetaTreeNode& node = forest.nodes[id];
    const auto& verts = idx.vertices_of(node);
    collected.insert(collected.end(), verts.begin(), verts.end());
    auto push = [&](NodeId nb) {
      if (nb != kNoNode && !visited[nb] && forest.nodes[nb].theta_idx >= gi) {
        visited[nb] = 1;
        stack.push_back(nb);
      }
    };
    push(node.parent);
    for (NodeId c : node.children) push(c);
  }

  // Materialize the eligible edges among collected vertices and re-extract
  // the community. Boundary vertices whose exact threshold falls below a
  // non-grid theta drop out here.
  const GraphInstance& g = net.at(t);
  std::vector<char> in_region(net.vertex_count(), 0);
  for (VertexId v : collected) in_region[v] = 1;
  std::vector<Edge> local_edges;
  std::vector<double> local_weights;
  for (VertexId v : collected)
    for (const auto& [u, w] : g.neighbors(v))
      if (v < u && in_region[u] && w >= theta) {
        local_edges.push_back({v, u});
        local_weights.push_back(w);
      }
  return local_max_kcore(
      GraphInstance::from_edges(net.vertex_count(), local_edges, local_weights), k,
      q);
}

// ---------------------------------------------------------------------------
// Structural comparison

namespace {

// Canonical description of one forest: per node (theta, vertices, parent
// vertices), sorted.
std::vector<std::string> forest_shape(const WcfIndex& idx, const ThetaForest& f) {
  std::vector<std::string> shape;
  for (const ThetaTreeNode& node : f.nodes) {
    std::ostringstream os;
    os << static_cast<int>(node.theta_idx) << '|';
    for (VertexId v : idx.vertices_of(node)) os << v << ',';
    os << '|';
    if (node.parent != kNoNode)
      for (VertexId v : idx.vertices_of(f.nodes[node.parent])) os << v << ',';
    shape.push_back(os.str());
  }
  std::sort(shape.begin(), shape.end());
  return shape;
}

}  // namespace

bool structurally_equal(const WcfIndex& a, const WcfIndex& b) {
  if (a.vertex_count() != b.vertex_count() ||
      a.snapshot_count() != b.snapshot_count() || !(a.grid() == b.grid()))
    return false;
  for (Timestamp t = 0; t < a.snapshot_count(); ++t) {
    if (a.k_max(t) != b.k_max(t)) return false;
    for (int k = 1; k <= a.k_max(t); ++k) {
      if (a.max_core_component(k, t) != b.max_core_component(k, t)) return false;
      if (forest_shape(a, a.forest(k, t)) != forest_shape(b, b.forest(k, t)))
        return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

constexpr char kIdxMagic[4] = {'W', 'C', 'F', 'X'};
constexpr std::uint32_t kIdxVersion = 1;

class Hasher {
 public:
  void feed(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ull;
    }
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ull;
};

}  // namespace

void WcfIndex::save(std::ostream& out) const {
  Hasher hash;
  auto raw = [&](const void* data, std::size_t n) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    hash.feed(data, n);
  };
  auto pod = [&](auto v) { raw(&v, sizeof(v)); };

  raw(kIdxMagic, 4);
  pod(kIdxVersion);
  pod(static_cast<std::uint8_t>(compressed() ? 1 : 0));
  pod(static_cast<std::uint32_t>(vertex_count_));
  pod(static_cast<std::uint32_t>(forests_.size()));
  pod(static_cast<std::uint32_t>(grid_.values.size()));
  for (double v : grid_.values) pod(v);

  for (Timestamp t = 0; t < forests_.size(); ++t) {
    const auto& per_t = forests_[t];
    pod(static_cast<std::uint32_t>(per_t.size()));
    for (int size : core_component_max_[t]) pod(static_cast<std::uint32_t>(size));
    for (const ThetaForest& f : per_t) {
      pod(static_cast<std::uint32_t>(f.nodes.size()));
      for (const ThetaTreeNode& node : f.nodes) {
        pod(static_cast<std::uint8_t>(node.theta_idx));
        pod(static_cast<std::int32_t>(node.parent));
        pod(static_cast<std::uint8_t>(node.is_virtual() ? 1 : 0));
        if (node.is_virtual()) {
          pod(static_cast<std::uint32_t>(node.virtual_ref));
        } else {
          pod(static_cast<std::uint32_t>(node.vertices.size()));
          for (VertexId v : node.vertices) pod(v);
        }
      }
    }
  }
  pod(static_cast<std::uint32_t>(aux_.sets.size()));
  for (const auto& set : aux_.sets) {
    pod(static_cast<std::uint32_t>(set.size()));
    for (VertexId v : set) pod(v);
  }
  std::uint64_t h = hash.value();
  out.write(reinterpret_cast<const char*>(&h), sizeof(h));
  if (!out) throw IoError("write failure");
}

WcfIndex WcfIndex::load(std::istream& in) {
  Hasher hash;
  auto raw = [&](void* data, std::size_t n) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in.gcount() != static_cast<std::streamsize>(n))
      throw IoError("truncated index file");
    hash.feed(data, n);
  };
  auto pod = [&]<typename T>(T* v) { raw(v, sizeof(T)); };

  char magic[4];
  raw(magic, 4);
  if (std::memcmp(magic, kIdxMagic, 4) != 0) throw IoError("bad index magic");
  std::uint32_t version;
  pod(&version);
  if (version != kIdxVersion) throw IoError("index version mismatch");

  WcfIndex idx;
  std::uint8_t flags;
  pod(&flags);
  std::uint32_t nv, nt, ng;
  pod(&nv);
  pod(&nt);
  pod(&ng);
  idx.vertex_count_ = nv;
  idx.grid_.values.resize(ng);
  for (auto& v : idx.grid_.values) pod(&v);
  idx.grid_.validate();

  idx.forests_.resize(nt);
  idx.core_component_max_.resize(nt);
  for (std::uint32_t t = 0; t < nt; ++t) {
    auto& per_t = idx.forests_[t];
    std::uint32_t kmax;
    pod(&kmax);
    per_t.resize(kmax);
    idx.core_component_max_[t].resize(kmax);
    for (auto& size : idx.core_component_max_[t]) {
      std::uint32_t raw;
      pod(&raw);
      size = static_cast<int>(raw);
    }
    for (ThetaForest& f : per_t) {
      std::uint32_t count;
      pod(&count);
      f.nodes.resize(count);
      for (ThetaTreeNode& node : f.nodes) {
        std::uint8_t theta_idx, kind;
        std::int32_t parent;
        pod(&theta_idx);
        pod(&parent);
        pod(&kind);
        node.theta_idx = theta_idx;
        if (theta_idx >= ng) throw IoError("node threshold outside grid");
        node.parent = parent;
        if (parent != kNoNode && (parent < 0 || parent >= static_cast<std::int32_t>(count)))
          throw IoError("node parent out of range");
        if (kind == 1) {
          std::uint32_t ref;
          pod(&ref);
          node.virtual_ref = static_cast<std::int32_t>(ref);
        } else {
          std::uint32_t sz;
          pod(&sz);
          node.vertices.resize(sz);
          for (auto& v : node.vertices) {
            pod(&v);
            if (v >= nv) throw IoError("vertex id out of range");
          }
        }
      }
    }
  }
  std::uint32_t aux_count;
  pod(&aux_count);
  idx.aux_.sets.resize(aux_count);
  for (auto& set : idx.aux_.sets) {
    std::uint32_t sz;
    pod(&sz);
    set.resize(sz);
    for (auto& v : set) {
      pod(&v);
      if (v >= nv) throw IoError("vertex id out of range");
    }
  }
  std::uint64_t expect = hash.value(), stored;
  in.read(reinterpret_cast<char*>(&stored), sizeof(stored));
  if (in.gcount() != sizeof(stored)) throw IoError("truncated index file");
  if (stored != expect) throw IoError("index checksum mismatch");

  if ((flags & 1) != (idx.compressed() ? 1 : 0))
    throw IoError("compression flag disagrees with payload");
  for (const auto& per_t : idx.forests_)
    for (const ThetaForest& f : per_t)
      for (const ThetaTreeNode& node : f.nodes)
        if (node.is_virtual() &&
            static_cast<std::size_t>(node.virtual_ref) >= idx.aux_.sets.size())
          throw IoError("dangling virtual node reference");
  idx.reindex();
  return idx;
}

void WcfIndex::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save(out);
}

WcfIndex WcfIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return load(in);
}

std::string WcfIndex::to_json() const {
  nlohmann::json j;
  j["version"] = kIdxVersion;
  j["grid"] = grid_.values;
  j["vertices"] = vertex_count_;
  auto& snaps = j["snapshots"] = nlohmann::json::array();
  for (Timestamp t = 0; t < forests_.size(); ++t) {
    nlohmann::json js;
    js["t"] = t;
    js["k_max"] = forests_[t].size();
    auto& trees = js["trees"] = nlohmann::json::array();
    for (std::size_t ki = 0; ki < forests_[t].size(); ++ki) {
      nlohmann::json jk;
      jk["k"] = ki + 1;
      auto& nodes = jk["nodes"] = nlohmann::json::array();
      const ThetaForest& f = forests_[t][ki];
      for (NodeId id = 0; id < static_cast<NodeId>(f.nodes.size()); ++id) {
        const ThetaTreeNode& node = f.nodes[id];
        nlohmann::json jn;
        jn["id"] = id;
        jn["theta"] = grid_.values[node.theta_idx];
        jn["parent"] = node.parent;
        if (node.is_virtual()) jn["virtual_ref"] = node.virtual_ref;
        jn["vertices"] = vertices_of(node);
        nodes.push_back(std::move(jn));
      }
      trees.push_back(std::move(jk));
    }
    snaps.push_back(std::move(js));
  }
  if (compressed()) j["auxiliary"] = aux_.sets;
  return j.dump(2);
}

}  // namespace crcs
