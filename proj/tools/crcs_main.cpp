// crcs: reliable community search over dynamic weighted graphs.
//
// Subcommands cover the full artifact lifecycle: ingest an edge stream,
// build/maintain/compress the forest index, answer queries online (eef) or
// through the index (wcf), sweep alpha, score community quality, benchmark
// both engines, and cross-check everything against the brute-force oracle.

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "crcs/compress.hpp"
#include "crcs/eef.hpp"
#include "crcs/maintenance.hpp"
#include "crcs/metrics.hpp"
#include "crcs/oracle.hpp"
#include "crcs/wcf_search.hpp"

using json = nlohmann::json;
using namespace crcs;

namespace {

int log_level() {
  static int level = [] {
    const char* env = std::getenv("CRCS_LOG");
    if (!env) return 1;
    std::string v(env);
    if (v == "debug") return 2;
    if (v == "info") return 1;
    if (v == "warn") return 0;
    return -1;  // error/off
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[crcs] " << msg << "\n";
}

struct QuerySpec {
  std::string q_label;
  std::string k_spec = "1";
  double theta = 0.0;
  std::string window = "0:0";
  double alpha = 1.0;
};

void add_query_flags(CLI::App* cmd, QuerySpec& spec) {
  cmd->add_option("--q", spec.q_label, "query vertex (external label)")->required();
  cmd->add_option("--k", spec.k_spec,
                  "degree constraint; absolute (e.g. 3) or percent of the "
                  "window's max core (e.g. 40%)")
      ->required();
  cmd->add_option("--theta", spec.theta, "weight threshold in [0,1]")->required();
  cmd->add_option("--window", spec.window, "inclusive snapshot range a:b")->required();
  cmd->add_option("--alpha", spec.alpha, "duration-vs-size weight (default 1)");
}

std::pair<Timestamp, Timestamp> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw ConfigError("window must look like a:b, got `" + text + "`");
  try {
    long a = std::stol(text.substr(0, colon));
    long b = std::stol(text.substr(colon + 1));
    if (a < 0 || b < 0) throw ConfigError("window bounds must be non-negative");
    return {static_cast<Timestamp>(a), static_cast<Timestamp>(b)};
  } catch (const std::invalid_argument&) {
    throw ConfigError("window must look like a:b, got `" + text + "`");
  } catch (const std::out_of_range&) {
    throw ConfigError("window bounds out of range in `" + text + "`");
  }
}

int max_core_over_window(const DynamicNetwork& net, Timestamp a, Timestamp b) {
  int kmax = 0;
  for (Timestamp t = a; t <= b; ++t) {
    CoreNumbers core = core_decompose(net.at(t));
    for (int c : core) kmax = std::max(kmax, c);
  }
  return kmax;
}

// `40%` resolves against the max core number over the query window.
int resolve_k(const std::string& spec, const DynamicNetwork& net, Timestamp a,
              Timestamp b) {
  try {
    if (!spec.empty() && spec.back() == '%') {
      double pct = std::stod(spec.substr(0, spec.size() - 1));
      if (pct <= 0.0 || pct > 100.0)
        throw ConfigError("k percentage out of (0,100]");
      int kmax = max_core_over_window(net, a, b);
      return std::max(1, static_cast<int>(std::lround(pct / 100.0 * kmax)));
    }
    int k = std::stoi(spec);
    if (k < 1) throw ConfigError("k must be positive");
    return k;
  } catch (const std::invalid_argument&) {
    throw ConfigError("cannot parse k `" + spec + "`");
  } catch (const std::out_of_range&) {
    throw ConfigError("k value `" + spec + "` out of range");
  }
}

QueryParams resolve_query(const QuerySpec& spec, const DynamicNetwork& net) {
  auto [a, b] = parse_window(spec.window);
  auto q = net.find_label(spec.q_label);
  if (!q) throw ConfigError("unknown vertex label `" + spec.q_label + "`");
  QueryParams params{*q, resolve_k(spec.k_spec, net, a, b), spec.theta, a, b,
                     spec.alpha};
  params.validate(net);
  return params;
}

json community_to_json(const DynamicNetwork& net, const Community& c) {
  json j;
  j["size"] = c.vertices.size();
  j["interval"] = {c.t_begin, c.t_end};
  j["duration"] = c.duration();
  j["score"] = c.score;
  j["vertices"] = json::array();
  for (VertexId v : c.vertices) j["vertices"].push_back(net.labels[v]);
  j["vertex_ids"] = c.vertices;
  j["edges"] = json::array();
  for (const Edge& e : c.edges)
    j["edges"].push_back({net.labels[e.u], net.labels[e.v]});
  return j;
}

json query_result_json(const DynamicNetwork& net, const QueryParams& params,
                       const std::optional<Community>& result,
                       const SearchStats& stats, const std::string& engine,
                       double elapsed_ms) {
  json j;
  j["schema"] = "crcs-query/1";
  j["engine"] = engine;
  j["params"] = {{"q", net.labels[params.q]}, {"k", params.k},
                 {"theta", params.theta},     {"window", {params.t_begin, params.t_end}},
                 {"alpha", params.alpha}};
  j["found"] = result.has_value();
  if (result) j["community"] = community_to_json(net, *result);
  j["stats"] = {{"core_extractions", stats.core_extractions},
                {"pruned", stats.pruned},
                {"elapsed_ms", elapsed_ms}};
  return j;
}

std::string result_tsv(const DynamicNetwork& net, const QueryParams& params,
                       const std::optional<Community>& result) {
  std::ostringstream out;
  out << net.labels[params.q] << '\t' << params.k << '\t' << params.theta << '\t'
      << params.t_begin << ':' << params.t_end << '\t' << params.alpha << '\t';
  if (!result) {
    out << "absent\n";
    return out.str();
  }
  out << result->score << '\t' << result->vertices.size() << '\t'
      << result->t_begin << ':' << result->t_end << '\t';
  for (std::size_t i = 0; i < result->vertices.size(); ++i) {
    if (i) out << ',';
    out << net.labels[result->vertices[i]];
  }
  out << '\n';
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open " + out_path + " for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

// Query vertices whose core numbers spread uniformly over [1, kmax], per the
// benchmark protocol.
std::vector<VertexId> sample_bench_vertices(const DynamicNetwork& net, Timestamp a,
                                            Timestamp b, std::size_t count,
                                            std::uint64_t seed) {
  std::vector<int> vertex_core(net.vertex_count(), 0);
  for (Timestamp t = a; t <= b; ++t) {
    CoreNumbers core = core_decompose(net.at(t));
    for (VertexId v = 0; v < net.vertex_count(); ++v)
      vertex_core[v] = std::max(vertex_core[v], core[v]);
  }
  int kmax = 0;
  for (int c : vertex_core) kmax = std::max(kmax, c);
  if (kmax == 0) throw ConfigError("network has no edges in the bench window");

  std::vector<std::vector<VertexId>> by_core(kmax + 1);
  for (VertexId v = 0; v < net.vertex_count(); ++v)
    if (vertex_core[v] > 0) by_core[vertex_core[v]].push_back(v);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_core(1, kmax);
  std::vector<VertexId> out;
  while (out.size() < count) {
    int c = pick_core(rng);
    if (by_core[c].empty()) continue;
    out.push_back(by_core[c][rng() % by_core[c].size()]);
  }
  return out;
}

int run_oracle_check(int trials, std::uint64_t seed, std::size_t max_vertices,
                     std::size_t max_snapshots) {
  std::mt19937_64 rng(seed);
  const std::vector<int> ks{1, 2, 3};
  const std::vector<double> thetas{0.0, 0.3, 0.6};
  const std::vector<double> alphas{0.0, 1.0, 2.0};

  long long checked = 0, nonempty = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::size_t n = 4 + rng() % (max_vertices - 3);
    std::size_t tc = 1 + rng() % max_snapshots;
    std::mt19937_64 local(rng());
    DynamicNetwork net = [&] {
      std::mt19937_64 gen(local());
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      DynamicNetwork out;
      for (std::size_t i = 0; i < n; ++i) {
        out.labels.push_back(std::to_string(i));
        out.label_index.emplace(out.labels.back(), static_cast<VertexId>(i));
      }
      for (std::size_t t = 0; t < tc; ++t) {
        GraphInstance g(n);
        for (VertexId u = 0; u < n; ++u)
          for (VertexId v = u + 1; v < n; ++v)
            if (coin(gen) < 0.4) g.add_edge(u, v, 0.05 * (1 + gen() % 20));
        out.snapshots.push_back(std::move(g));
      }
      return out;
    }();
    WcfIndex idx = build_wcf_index(net);
    VertexId q = static_cast<VertexId>(rng() % n);

    for (int k : ks)
      for (double theta : thetas)
        for (double alpha : alphas) {
          QueryParams params{q, k, theta, 0,
                             static_cast<Timestamp>(net.snapshot_count() - 1), alpha};
          OracleResult truth = brute_force_query(net, params);
          auto via_eef = eef_query(net, params);
          auto via_wcf = wcf_query(net, idx, params);
          ++checked;
          bool same_presence = truth.best.has_value() == via_eef.has_value() &&
                               truth.best.has_value() == via_wcf.has_value();
          if (!same_presence) {
            std::cerr << "mismatch (presence) at trial " << trial << "\n";
            return 1;
          }
          if (!truth.best) continue;
          ++nonempty;
          auto agrees = [&](const Community& c) {
            return std::abs(c.score - truth.best_score) <= kScoreTol &&
                   c.vertices == truth.best->vertices &&
                   c.t_begin == truth.best->t_begin && c.t_end == truth.best->t_end;
          };
          if (!agrees(*via_eef) || !agrees(*via_wcf)) {
            std::cerr << "mismatch (answer) at trial " << trial << " k=" << k
                      << " theta=" << theta << " alpha=" << alpha << "\n";
            return 1;
          }
        }
    if ((trial + 1) % 100 == 0)
      log_info("oracle-check: " + std::to_string(trial + 1) + "/" +
               std::to_string(trials) + " graphs ok");
  }
  std::cout << "oracle-check passed: " << checked << " queries (" << nonempty
            << " non-empty) agree across eef, wcf and the oracle\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reliable community search over dynamic weighted graphs"};
  app.require_subcommand(1);

  // --- ingest -------------------------------------------------------------
  auto* cmd_ingest = app.add_subcommand("ingest", "edge list -> binary network");
  std::string in_path, out_path;
  std::size_t snapshots = 1;
  std::string weight_mode = "given", normalize = "minmax";
  cmd_ingest->add_option("--input", in_path, "edge list (`u v t w`)")->required();
  cmd_ingest->add_option("--snapshots", snapshots, "number of snapshots")->required();
  cmd_ingest->add_option("--weight-mode", weight_mode)
      ->check(CLI::IsMember({"given", "frequency"}));
  cmd_ingest->add_option("--normalize", normalize)
      ->check(CLI::IsMember({"minmax", "none"}));
  cmd_ingest->add_option("--out", out_path, "output network file")->required();

  // --- build-index ----------------------------------------------------------
  auto* cmd_build = app.add_subcommand("build-index", "network -> forest index");
  std::string net_path, index_path;
  int grid_divisions = 10, threads = 1;
  cmd_build->add_option("--net", net_path)->required();
  cmd_build->add_option("--out", index_path)->required();
  cmd_build->add_option("--grid-divisions", grid_divisions,
                        "threshold grid resolution (default 10)");
  cmd_build->add_option("--threads", threads, "snapshot-parallel build workers");

  // --- maintain -------------------------------------------------------------
  auto* cmd_maintain = app.add_subcommand("maintain", "apply a delta file");
  std::string m_net, m_index, m_delta, m_out_net, m_out_index;
  long m_snapshot = 0;
  cmd_maintain->add_option("--net", m_net)->required();
  cmd_maintain->add_option("--index", m_index)->required();
  cmd_maintain->add_option("--snapshot", m_snapshot, "target snapshot")->required();
  cmd_maintain->add_option("--delta", m_delta, "updates: I u v w | D u v | W u v w")
      ->required();
  cmd_maintain->add_option("--out-net", m_out_net, "default: overwrite --net");
  cmd_maintain->add_option("--out-index", m_out_index, "default: overwrite --index");

  // --- compress / expand ------------------------------------------------------
  auto* cmd_compress = app.add_subcommand("compress", "deduplicate tree nodes");
  std::string c_index, c_out;
  bool c_expand = false;
  cmd_compress->add_option("--index", c_index)->required();
  cmd_compress->add_option("--out", c_out)->required();
  cmd_compress->add_flag("--expand", c_expand, "expand instead of compress");

  // --- queries ----------------------------------------------------------------
  QuerySpec q_spec;
  std::string q_net, q_index, q_format = "json", q_out;
  bool q_no_prune = false;

  auto* cmd_eef = app.add_subcommand("query-eef", "online search");
  auto* cmd_wcf = app.add_subcommand("query-wcf", "index-based search");
  for (CLI::App* cmd : {cmd_eef, cmd_wcf}) {
    cmd->add_option("--net", q_net)->required();
    add_query_flags(cmd, q_spec);
    cmd->add_option("--format", q_format)->check(CLI::IsMember({"json", "tsv"}));
    cmd->add_option("--out", q_out, "write to file instead of stdout");
    cmd->add_flag("--no-prune", q_no_prune, "disable all pruning rules");
  }
  cmd_wcf->add_option("--index", q_index)->required();

  // --- alpha-sweep -------------------------------------------------------------
  auto* cmd_sweep = app.add_subcommand("alpha-sweep", "query across alphas");
  QuerySpec s_spec;
  std::string s_net, s_index, s_alphas = "0,0.5,1,2,4,6", s_out;
  cmd_sweep->add_option("--net", s_net)->required();
  cmd_sweep->add_option("--index", s_index)->required();
  add_query_flags(cmd_sweep, s_spec);
  cmd_sweep->get_option("--alpha")->description("ignored; use --alphas");
  cmd_sweep->add_option("--alphas", s_alphas, "comma-separated alpha list");
  cmd_sweep->add_option("--out", s_out);

  // --- metrics -------------------------------------------------------------------
  auto* cmd_metrics = app.add_subcommand("metrics", "score a query result");
  std::string mt_net, mt_community, mt_out;
  cmd_metrics->add_option("--net", mt_net)->required();
  cmd_metrics->add_option("--community", mt_community,
                          "JSON produced by query-eef/query-wcf")
      ->required();
  cmd_metrics->add_option("--out", mt_out);

  // --- bench ------------------------------------------------------------------
  auto* cmd_bench = app.add_subcommand("bench", "eef vs wcf latency");
  std::string b_net, b_index, b_out, b_format = "tsv";
  std::size_t b_queries = 100;
  std::uint64_t b_seed = 42;
  double b_kpct = 40.0, b_theta = 0.4, b_alpha = 1.0;
  long b_window_len = 12;
  int b_threads = 1;
  cmd_bench->add_option("--net", b_net)->required();
  cmd_bench->add_option("--index", b_index)->required();
  cmd_bench->add_option("--queries", b_queries);
  cmd_bench->add_option("--seed", b_seed);
  cmd_bench->add_option("--k-pct", b_kpct, "k as percent of max core (default 40)");
  cmd_bench->add_option("--theta", b_theta);
  cmd_bench->add_option("--window-len", b_window_len, "snapshots (default 12)");
  cmd_bench->add_option("--alpha", b_alpha);
  cmd_bench->add_option("--threads", b_threads, "worker pool size");
  cmd_bench->add_option("--format", b_format)->check(CLI::IsMember({"tsv", "json"}));
  cmd_bench->add_option("--out", b_out);

  // --- oracle-check --------------------------------------------------------------
  auto* cmd_oracle = app.add_subcommand("oracle-check",
                                        "randomized equivalence suite");
  int o_trials = 100;
  std::uint64_t o_seed = 7;
  std::size_t o_max_v = 12, o_max_t = 4;
  cmd_oracle->add_option("--trials", o_trials);
  cmd_oracle->add_option("--seed", o_seed);
  cmd_oracle->add_option("--max-vertices", o_max_v)->check(CLI::Range(4, 15));
  cmd_oracle->add_option("--max-snapshots", o_max_t)->check(CLI::Range(1, 5));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_ingest) {
      std::ifstream in(in_path);
      if (!in) throw IoError("cannot open " + in_path);
      DynamicNetwork net = ingest_edge_stream(
          in, snapshots,
          weight_mode == "given" ? WeightMode::kGiven : WeightMode::kFrequency,
          normalize == "minmax" ? NormalizeMode::kMinMax : NormalizeMode::kNone);
      save_network(net, out_path);
      std::size_t edges = 0;
      for (const auto& g : net.snapshots) edges += g.edge_count();
      log_info("ingested " + std::to_string(net.vertex_count()) + " vertices, " +
               std::to_string(edges) + " edges over " +
               std::to_string(net.snapshot_count()) + " snapshots");
    } else if (*cmd_build) {
      DynamicNetwork net = load_network(net_path);
      auto start = std::chrono::steady_clock::now();
      WcfIndex idx = build_wcf_index(net, ThetaGrid::standard(grid_divisions),
                                     threads);
      log_info("index built in " + std::to_string(ms_since(start)) + " ms, " +
               std::to_string(idx.stored_slots()) + " slots");
      idx.save(index_path);
    } else if (*cmd_maintain) {
      DynamicNetwork net = load_network(m_net);
      WcfIndex idx = WcfIndex::load(m_index);
      std::ifstream in(m_delta);
      if (!in) throw IoError("cannot open " + m_delta);
      GraphDelta delta = parse_delta(in, static_cast<Timestamp>(m_snapshot), net);
      MaintenanceReport report = apply_delta(idx, net, delta);
      save_network(net, m_out_net.empty() ? m_net : m_out_net);
      idx.save(m_out_index.empty() ? m_index : m_out_index);
      log_info("applied " + std::to_string(delta.updates.size()) + " updates, " +
               std::to_string(report.changed.size()) + " thresholds changed");
    } else if (*cmd_compress) {
      WcfIndex idx = WcfIndex::load(c_index);
      std::size_t before = idx.storage_slots();
      if (c_expand)
        expand(idx);
      else
        compress(idx);
      idx.save(c_out);
      log_info("slots " + std::to_string(before) + " -> " +
               std::to_string(idx.storage_slots()));
    } else if (*cmd_eef || *cmd_wcf) {
      DynamicNetwork net = load_network(q_net);
      QueryParams params = resolve_query(q_spec, net);
      SearchOptions opts;
      if (q_no_prune) opts = SearchOptions{false, false, false};
      SearchStats stats;
      auto start = std::chrono::steady_clock::now();
      std::optional<Community> result;
      std::string engine;
      if (*cmd_eef) {
        engine = "eef";
        result = eef_query(net, params, opts, &stats);
      } else {
        engine = "wcf";
        WcfIndex idx = WcfIndex::load(q_index);
        result = wcf_query(net, idx, params, opts, &stats);
      }
      double elapsed = ms_since(start);
      if (q_format == "json")
        emit(query_result_json(net, params, result, stats, engine, elapsed).dump(2),
             q_out);
      else
        emit(result_tsv(net, params, result), q_out);
    } else if (*cmd_sweep) {
      DynamicNetwork net = load_network(s_net);
      WcfIndex idx = WcfIndex::load(s_index);
      QueryParams params = resolve_query(s_spec, net);
      std::vector<double> alphas;
      std::stringstream ss(s_alphas);
      for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty()) {
          try {
            alphas.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw ConfigError("cannot parse alpha `" + item + "`");
          }
        }
      if (alphas.empty()) throw ConfigError("--alphas is empty");
      auto sweep = alpha_sweep(net, idx, params, alphas);
      json j;
      j["schema"] = "crcs-alpha-sweep/1";
      j["params"] = {{"q", net.labels[params.q]},
                     {"k", params.k},
                     {"theta", params.theta},
                     {"window", {params.t_begin, params.t_end}}};
      j["results"] = json::array();
      for (const auto& [alpha, community] : sweep) {
        json entry;
        entry["alpha"] = alpha;
        entry["found"] = community.has_value();
        if (community) entry["community"] = community_to_json(net, *community);
        j["results"].push_back(std::move(entry));
      }
      emit(j.dump(2), s_out);
    } else if (*cmd_metrics) {
      DynamicNetwork net = load_network(mt_net);
      std::ifstream in(mt_community);
      if (!in) throw IoError("cannot open " + mt_community);
      json input = json::parse(in);
      if (!input.value("found", false))
        throw ConfigError("community file holds an empty result");
      const json& jc = input.at("community");
      Community community;
      for (const auto& label : jc.at("vertices")) {
        auto v = net.find_label(label.get<std::string>());
        if (!v) throw ConfigError("community vertex not in network");
        community.vertices.push_back(*v);
      }
      std::sort(community.vertices.begin(), community.vertices.end());
      community.t_begin = jc.at("interval")[0].get<Timestamp>();
      community.t_end = jc.at("interval")[1].get<Timestamp>();
      community.score = jc.value("score", 0.0);
      QualityReport report = evaluate(net, community);
      json j;
      j["schema"] = "crcs-metrics/1";
      j["ass"] = report.ass;
      j["asd"] = report.asd;
      j["ascore"] = report.ascore;
      j["ascond"] = report.ascond;
      j["per_snapshot"] = json::array();
      for (const SnapshotQuality& q : report.per_snapshot)
        j["per_snapshot"].push_back({{"t", q.t},
                                     {"size", q.size},
                                     {"density", q.density},
                                     {"avg_core", q.avg_core},
                                     {"conductance", q.conductance}});
      emit(j.dump(2), mt_out);
    } else if (*cmd_bench) {
      DynamicNetwork net = load_network(b_net);
      WcfIndex idx = WcfIndex::load(b_index);
      if (net.snapshot_count() == 0) throw ConfigError("empty network");
      Timestamp len = static_cast<Timestamp>(
          std::min<long>(b_window_len, static_cast<long>(net.snapshot_count())));
      Timestamp a = 0, b = len - 1;
      int k = std::max(1, static_cast<int>(std::lround(
                              b_kpct / 100.0 * max_core_over_window(net, a, b))));
      std::vector<VertexId> queries =
          sample_bench_vertices(net, a, b, b_queries, b_seed);

      struct Row {
        VertexId q;
        double eef_ms, wcf_ms, score;
        bool found;
      };
      std::vector<Row> rows(queries.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next.fetch_add(1); i < queries.size();
             i = next.fetch_add(1)) {
          QueryParams params{queries[i], k, b_theta, a, b, b_alpha};
          auto t0 = std::chrono::steady_clock::now();
          auto via_eef = eef_query(net, params);
          double eef_ms = ms_since(t0);
          auto t1 = std::chrono::steady_clock::now();
          auto via_wcf = wcf_query(net, idx, params);
          double wcf_ms = ms_since(t1);
          rows[i] = {queries[i], eef_ms, wcf_ms,
                     via_wcf ? via_wcf->score : 0.0, via_wcf.has_value()};
          (void)via_eef;
        }
      };
      std::vector<std::thread> pool;
      int workers = std::max(1, b_threads);
      for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
      for (auto& th : pool) th.join();

      if (b_format == "tsv") {
        std::ostringstream out;
        out << "query\tk\ttheta\twindow\talpha\teef_ms\twcf_ms\tscore\tfound\n";
        for (const Row& r : rows)
          out << net.labels[r.q] << '\t' << k << '\t' << b_theta << '\t' << a << ':'
              << b << '\t' << b_alpha << '\t' << r.eef_ms << '\t' << r.wcf_ms
              << '\t' << r.score << '\t' << (r.found ? 1 : 0) << '\n';
        emit(out.str(), b_out);
      } else {
        json j;
        j["schema"] = "crcs-bench/1";
        j["config"] = {{"k", k},           {"theta", b_theta}, {"window", {a, b}},
                       {"alpha", b_alpha}, {"seed", b_seed},   {"queries", b_queries}};
        j["rows"] = json::array();
        for (const Row& r : rows)
          j["rows"].push_back({{"q", net.labels[r.q]},
                               {"eef_ms", r.eef_ms},
                               {"wcf_ms", r.wcf_ms},
                               {"score", r.score},
                               {"found", r.found}});
        emit(j.dump(2), b_out);
      }
    } else if (*cmd_oracle) {
      return run_oracle_check(o_trials, o_seed, o_max_v, o_max_t);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
