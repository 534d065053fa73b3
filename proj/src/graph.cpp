#include "crcs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace crcs {

namespace {

std::vector<std::pair<VertexId, double>>::const_iterator find_neighbor(
    const std::vector<std::pair<VertexId, double>>& list, VertexId v) {
  auto it = std::lower_bound(
      list.begin(), list.end(), v,
      [](const std::pair<VertexId, double>& e, VertexId x) { return e.first < x; });
  return (it != list.end() && it->first == v) ? it : list.end();
}

void check_weight(double w) {
  if (!(w > 0.0) || w > 1.0 || !std::isfinite(w))
    throw InvariantError("edge weight must lie in (0,1], got " + std::to_string(w));
}

}  // namespace

double GraphInstance::weight(VertexId u, VertexId v) const {
  if (u >= adj_.size()) return 0.0;
  auto it = find_neighbor(adj_[u], v);
  return it == adj_[u].end() ? 0.0 : it->second;
}

void GraphInstance::ensure_vertex(VertexId v) {
  if (v >= adj_.size()) adj_.resize(v + 1);
}

void GraphInstance::add_edge(VertexId u, VertexId v, double w) {
  if (u == v) throw InvariantError("self loop rejected");
  check_weight(w);
  ensure_vertex(std::max(u, v));
  if (has_edge(u, v)) throw InvariantError("duplicate edge rejected");
  auto insert_into = [](std::vector<std::pair<VertexId, double>>& list,
                        VertexId nb, double weight) {
    auto it = std::lower_bound(
        list.begin(), list.end(), nb,
        [](const std::pair<VertexId, double>& e, VertexId x) { return e.first < x; });
    list.insert(it, {nb, weight});
  };
  insert_into(adj_[u], v, w);
  insert_into(adj_[v], u, w);
  ++edges_;
}

void GraphInstance::remove_edge(VertexId u, VertexId v) {
  if (!has_edge(u, v)) throw InvariantError("edge not present");
  auto erase_from = [](std::vector<std::pair<VertexId, double>>& list, VertexId nb) {
    auto it = std::lower_bound(
        list.begin(), list.end(), nb,
        [](const std::pair<VertexId, double>& e, VertexId x) { return e.first < x; });
    list.erase(it);
  };
  erase_from(adj_[u], v);
  erase_from(adj_[v], u);
  --edges_;
}

void GraphInstance::set_weight(VertexId u, VertexId v, double w) {
  if (!has_edge(u, v)) throw InvariantError("edge not present");
  check_weight(w);
  auto update = [&](std::vector<std::pair<VertexId, double>>& list, VertexId nb) {
    auto it = std::lower_bound(
        list.begin(), list.end(), nb,
        [](const std::pair<VertexId, double>& e, VertexId x) { return e.first < x; });
    it->second = w;
  };
  update(adj_[u], v);
  update(adj_[v], u);
}

GraphInstance GraphInstance::from_edges(std::size_t num_vertices,
                                        std::span<const Edge> edge_set,
                                        std::span<const double> weights) {
  if (edge_set.size() != weights.size())
    throw InvariantError("from_edges: weight count mismatch");
  GraphInstance out(num_vertices);
  for (std::size_t i = 0; i < edge_set.size(); ++i) {
    const Edge& e = edge_set[i];
    if (e.u == e.v) throw InvariantError("self loop rejected");
    if (e.u >= num_vertices || e.v >= num_vertices)
      throw InvariantError("from_edges: vertex out of range");
    check_weight(weights[i]);
    out.adj_[e.u].emplace_back(e.v, weights[i]);
    out.adj_[e.v].emplace_back(e.u, weights[i]);
  }
  for (auto& list : out.adj_) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i].first == list[i - 1].first)
        throw InvariantError("duplicate edge rejected");
  }
  out.edges_ = edge_set.size();
  return out;
}

std::vector<Edge> GraphInstance::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_);
  for_each_edge([&](VertexId u, VertexId v, double) { out.push_back({u, v}); });
  return out;
}

void QueryParams::validate(const DynamicNetwork& net) const {
  if (k < 1) throw ConfigError("k must be a positive integer");
  if (theta < 0.0 || theta > 1.0) throw ConfigError("theta must lie in [0,1]");
  if (alpha < 0.0) throw ConfigError("alpha must be non-negative");
  if (t_begin > t_end) throw ConfigError("query window start exceeds end");
  if (t_end >= net.snapshot_count())
    throw ConfigError("query window exceeds snapshot range");
  if (q >= net.vertex_count()) throw ConfigError("query vertex out of range");
}

GraphInstance induced_by_edges(const GraphInstance& g, std::span<const Edge> edge_set) {
  std::vector<double> weights;
  weights.reserve(edge_set.size());
  for (const Edge& e : edge_set) {
    double w = g.weight(e.u, e.v);
    if (w <= 0.0)
      throw InvariantError("induced_by_edges: edge (" + std::to_string(e.u) + "," +
                           std::to_string(e.v) + ") not in graph");
    weights.push_back(w);
  }
  return GraphInstance::from_edges(g.size(), edge_set, weights);
}

namespace {

struct RawEdge {
  VertexId u, v;
  long long t;
  double w;
};

}  // namespace

DynamicNetwork ingest_edge_stream(std::istream& in, std::size_t num_snapshots,
                                  WeightMode mode, NormalizeMode norm) {
  if (num_snapshots < 1) throw ConfigError("num_snapshots must be at least 1");

  DynamicNetwork net;
  auto intern = [&](const std::string& label) -> VertexId {
    auto it = net.label_index.find(label);
    if (it != net.label_index.end()) return it->second;
    VertexId id = static_cast<VertexId>(net.labels.size());
    net.labels.push_back(label);
    net.label_index.emplace(label, id);
    return id;
  };

  std::vector<RawEdge> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string su, sv;
    long long t;
    double w = 1.0;
    if (!(ls >> su >> sv >> t)) throw ParseError(line_no, "expected `u v t w`");
    bool have_w = static_cast<bool>(ls >> w);
    if (!have_w) {
      if (mode == WeightMode::kGiven)
        throw ParseError(line_no, "missing weight in `given` mode");
      w = 1.0;
    }
    if (ls.fail() && !ls.eof()) throw ParseError(line_no, "malformed weight");
    if (t < 0) throw ParseError(line_no, "negative timestamp");
    VertexId u = intern(su), v = intern(sv);
    if (u == v) continue;  // self loops are ignored
    records.push_back({u, v, t, w});
  }

  if (num_snapshots > records.size())
    throw ConfigError("num_snapshots (" + std::to_string(num_snapshots) +
                      ") exceeds edge count (" + std::to_string(records.size()) + ")");

  std::stable_sort(records.begin(), records.end(),
                   [](const RawEdge& a, const RawEdge& b) { return a.t < b.t; });

  // Equal-count partitions; the last one takes the remainder.
  std::size_t base = records.size() / num_snapshots;
  std::vector<std::map<std::pair<VertexId, VertexId>, double>> merged(num_snapshots);
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::size_t part = std::min(i / base, num_snapshots - 1);
    const RawEdge& r = records[i];
    auto key = std::minmax(r.u, r.v);
    auto [it, inserted] = merged[part].try_emplace({key.first, key.second},
                                                   mode == WeightMode::kFrequency ? 1.0 : r.w);
    if (!inserted) {
      if (mode == WeightMode::kFrequency)
        it->second += 1.0;
      else
        it->second = std::max(it->second, r.w);
    }
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& part : merged)
    for (const auto& [e, w] : part) {
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }

  net.snapshots.assign(num_snapshots, GraphInstance(net.labels.size()));
  for (std::size_t p = 0; p < num_snapshots; ++p) {
    for (const auto& [e, w] : merged[p]) {
      double wn = w;
      if (norm == NormalizeMode::kMinMax) {
        wn = (hi > lo) ? (w - lo) / (hi - lo) : 1.0;
        if (wn == 0.0) continue;  // keeps weights in (0,1]
      } else if (!(w > 0.0) || w > 1.0) {
        throw ConfigError("weight " + std::to_string(w) +
                          " outside (0,1]; use min-max normalization");
      }
      net.snapshots[p].add_edge(e.first, e.second, wn);
    }
  }
  return net;
}

// ---------------------------------------------------------------------------
// Binary serialization: versioned header, per-snapshot CSR arrays, FNV-1a
// trailer over everything that precedes it.

namespace {

constexpr char kNetMagic[4] = {'D', 'W', 'N', 'X'};
constexpr std::uint32_t kNetVersion = 1;

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

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void raw(const void* data, std::size_t n) {
    out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
    hash_.feed(data, n);
  }
  template <typename T>
  void pod(T v) {
    raw(&v, sizeof(T));
  }
  void finish() {
    std::uint64_t h = hash_.value();
    out_.write(reinterpret_cast<const char*>(&h), sizeof(h));
    if (!out_) throw IoError("write failure");
  }

 private:
  std::ostream& out_;
  Hasher hash_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  void raw(void* data, std::size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n))
      throw IoError("truncated file");
    hash_.feed(data, n);
  }
  template <typename T>
  T pod() {
    T v;
    raw(&v, sizeof(T));
    return v;
  }
  void verify_checksum() {
    std::uint64_t expect = hash_.value();
    std::uint64_t stored;
    in_.read(reinterpret_cast<char*>(&stored), sizeof(stored));
    if (in_.gcount() != sizeof(stored)) throw IoError("truncated file");
    if (stored != expect) throw IoError("checksum mismatch");
  }

 private:
  std::istream& in_;
  Hasher hash_;
};

}  // namespace

void save_network(const DynamicNetwork& net, std::ostream& out) {
  Writer w(out);
  w.raw(kNetMagic, 4);
  w.pod(kNetVersion);
  w.pod(static_cast<std::uint32_t>(net.vertex_count()));
  w.pod(static_cast<std::uint32_t>(net.snapshot_count()));
  for (const std::string& label : net.labels) {
    w.pod(static_cast<std::uint32_t>(label.size()));
    w.raw(label.data(), label.size());
  }
  for (const GraphInstance& g : net.snapshots) {
    w.pod(static_cast<std::uint64_t>(g.edge_count()));
    std::uint64_t offset = 0;
    for (VertexId v = 0; v < net.vertex_count(); ++v) {
      w.pod(offset);
      offset += g.neighbors(v).size();
    }
    w.pod(offset);
    for (VertexId v = 0; v < net.vertex_count(); ++v)
      for (const auto& [nb, wt] : g.neighbors(v)) {
        w.pod(nb);
        w.pod(wt);
      }
  }
  w.finish();
}

DynamicNetwork load_network(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.raw(magic, 4);
  if (std::memcmp(magic, kNetMagic, 4) != 0) throw IoError("bad magic");
  if (r.pod<std::uint32_t>() != kNetVersion) throw IoError("version mismatch");
  std::uint32_t nv = r.pod<std::uint32_t>();
  std::uint32_t nt = r.pod<std::uint32_t>();
  DynamicNetwork net;
  net.labels.reserve(nv);
  for (std::uint32_t i = 0; i < nv; ++i) {
    std::uint32_t len = r.pod<std::uint32_t>();
    std::string label(len, '\0');
    r.raw(label.data(), len);
    net.label_index.emplace(label, i);
    net.labels.push_back(std::move(label));
  }
  net.snapshots.reserve(nt);
  for (std::uint32_t t = 0; t < nt; ++t) {
    std::uint64_t m = r.pod<std::uint64_t>();
    std::vector<std::uint64_t> offsets(nv + 1);
    for (auto& o : offsets) o = r.pod<std::uint64_t>();
    if (offsets[nv] != 2 * m) throw IoError("inconsistent CSR arrays");
    GraphInstance g(nv);
    for (VertexId v = 0; v < nv; ++v) {
      for (std::uint64_t i = offsets[v]; i < offsets[v + 1]; ++i) {
        auto nb = r.pod<VertexId>();
        auto wt = r.pod<double>();
        if (nb < v) continue;  // stored from both endpoints
        g.add_edge(v, nb, wt);
      }
    }
    if (g.edge_count() != m) throw IoError("edge count mismatch");
    net.snapshots.push_back(std::move(g));
  }
  r.verify_checksum();
  return net;
}

void save_network(const DynamicNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  save_network(net, out);
}

DynamicNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return load_network(in);
}

}  // namespace crcs
