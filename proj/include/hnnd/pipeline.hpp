#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hnnd/clustering.hpp"
#include "hnnd/dataset.hpp"
#include "hnnd/delaunay.hpp"
#include "hnnd/descent.hpp"
#include "hnnd/errors.hpp"
#include "hnnd/metric.hpp"
#include "hnnd/mst.hpp"
#include "hnnd/neighbor_graph.hpp"
#include "hnnd/potential.hpp"

namespace hnnd {

class ConfigError : public UsageError {
 public:
  using UsageError::UsageError;
};

enum class Method { nd, nnd, hnnd, mst_cut };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::nd: return "nd";
    case Method::nnd: return "nnd";
    case Method::hnnd: return "hnnd";
    case Method::mst_cut: return "mst-cut";
  }
  return "?";
}

inline Method parse_method(std::string_view name) {
  if (name == "nd") return Method::nd;
  if (name == "nnd") return Method::nnd;
  if (name == "hnnd") return Method::hnnd;
  if (name == "mst-cut") return Method::mst_cut;
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

inline GraphSource parse_graph_source(std::string_view name) {
  if (name == "knn") return GraphSource::knn;
  if (name == "dt") return GraphSource::delaunay;
  if (name == "mst") return GraphSource::mst;
  if (name == "complete") return GraphSource::complete;
  if (name == "file") return GraphSource::external;
  throw ConfigError("unknown graph kind '" + std::string(name) + "'");
}

struct GraphSpec {
  GraphSource kind = GraphSource::knn;
  std::size_t k = 10;
  bool symmetrize = false;
  std::string edge_file;  // kind == external
};

struct PotentialSpec {
  PotentialMethod method = PotentialMethod::kernel;
  double sigma = 0.0;
};

struct CutSpec {
  std::optional<std::size_t> count;
  std::optional<double> threshold;
};

struct RunConfig {
  std::string input;
  DataKind kind = DataKind::numeric;
  std::optional<std::size_t> truth_column;
  std::string truth_file;
  std::optional<Metric> metric;  // default: euclidean or mismatch by kind
  GraphSpec graph;
  std::optional<PotentialSpec> potential;
  Method method = Method::hnnd;
  CutSpec cut;
  bool normalize = false;
  std::size_t cache_limit = Distances::default_cache_limit;

  std::string labels_out;
  std::string edgeplot_out;
  std::string summary_out;
  std::string parents_out;
  std::string potential_out;
  std::string graph_out;

  Metric resolved_metric() const {
    if (metric) return *metric;
    return kind == DataKind::categorical ? Metric::mismatch : Metric::euclidean;
  }
};

/// Checks that need only the configuration.
inline void validate(const RunConfig& cfg) {
  if (cfg.method == Method::mst_cut && cfg.potential) {
    throw ConfigError("method mst-cut takes no potential; drop --potential/--sigma");
  }
  if (cfg.method != Method::mst_cut && !cfg.potential) {
    throw ConfigError("method " + std::string(to_string(cfg.method)) +
                      " needs a potential (--potential kernel --sigma S, or --potential local)");
  }
  if (cfg.potential && cfg.potential->method == PotentialMethod::kernel &&
      !(cfg.potential->sigma > 0.0)) {
    throw ConfigError("kernel potential needs --sigma > 0");
  }
  if (cfg.cut.count && cfg.cut.threshold) {
    throw ConfigError("give either --cut-count or --cut-threshold, not both");
  }
  if (cfg.cut.threshold && !(*cfg.cut.threshold >= 0.0)) {
    throw ConfigError("--cut-threshold must be non-negative");
  }
  if (cfg.graph.kind == GraphSource::knn && cfg.graph.k < 1) throw ConfigError("--k must be >= 1");
  if (cfg.graph.kind == GraphSource::delaunay && cfg.kind != DataKind::numeric) {
    throw ConfigError("--graph dt needs numeric data");
  }
  if (cfg.graph.kind == GraphSource::external && cfg.graph.edge_file.empty()) {
    throw ConfigError("--graph file needs --graph-file PATH");
  }
  if (!metric_accepts(cfg.resolved_metric(), cfg.kind)) {
    throw ConfigError("metric " + std::string(to_string(cfg.resolved_metric())) +
                      " does not fit " +
                      (cfg.kind == DataKind::numeric ? "numeric" : "categorical") + " data");
  }
}

/// Checks that depend on the loaded data.
inline void validate(const RunConfig& cfg, const Dataset& ds) {
  validate(cfg);
  if (cfg.graph.kind == GraphSource::delaunay && ds.dim() != 2) {
    throw ConfigError("--graph dt needs 2-dimensional data; input has d=" + std::to_string(ds.dim()));
  }
  if (cfg.graph.kind == GraphSource::knn && ds.size() > 1 && cfg.graph.k > ds.size() - 1) {
    throw ConfigError("--k " + std::to_string(cfg.graph.k) + " exceeds N-1 = " +
                      std::to_string(ds.size() - 1));
  }
}

inline Dataset load_input(const RunConfig& cfg) {
  auto ds = load_file(cfg.input, cfg.kind, cfg.truth_column);
  if (!cfg.truth_file.empty()) {
    std::ifstream in(cfg.truth_file);
    if (!in) throw UsageError("cannot open truth file '" + cfg.truth_file + "'");
    ds.set_truth(load_labels(in, ds.size()));
  }
  if (cfg.normalize) ds = normalize_min_max(ds);
  return ds;
}

struct StageTimes {
  double graph = 0.0;
  double potential = 0.0;
  double step3 = 0.0;  // neighbor-constrained descent
  double step4 = 0.0;  // root merge, or full descent for nd
  double cut_assign = 0.0;
  double total = 0.0;
};

struct RunResult {
  Method method = Method::hnnd;
  std::size_t n = 0;
  std::size_t d = 0;
  ParentForest forest;        // descent methods
  WeightedTreeEdges tree;     // mst-cut
  std::size_t nnd_roots = 0;  // roots after the neighbor-constrained pass
  EdgePlot plot;
  std::optional<ClusterLabeling> labels;
  std::optional<ErrorReport> error;
  StageTimes times;
};

namespace detail {

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

inline NeighborGraph build_graph(const GraphSpec& spec, const Distances& dist) {
  const std::size_t n = dist.size();
  switch (spec.kind) {
    case GraphSource::knn:
      if (n == 1) return NeighborGraph::complete(1, GraphSource::knn);
      return knn_graph(dist, spec.k, spec.symmetrize);
    case GraphSource::delaunay: return delaunay_2d(dist.dataset());
    case GraphSource::mst: return mst_graph(mst(dist));
    case GraphSource::complete: return NeighborGraph::complete(n);
    case GraphSource::external: {
      std::ifstream in(spec.edge_file);
      if (!in) throw UsageError("cannot open graph file '" + spec.edge_file + "'");
      return load_edge_list(in, n);
    }
  }
  throw ConfigError("unsupported graph kind");
}

/// Runs graph -> potential -> descent -> edge plot, and the cut when
/// `assign` is set. Pure apart from timing.
inline RunResult run_pipeline(const Dataset& ds, const RunConfig& cfg, bool assign = true) {
  validate(cfg, ds);
  detail::Stopwatch total, watch;
  RunResult result;
  result.method = cfg.method;
  result.n = ds.size();
  result.d = ds.dim();

  Distances dist(ds, cfg.resolved_metric(), cfg.cache_limit);
  const bool needs_all_pairs =
      cfg.method == Method::nd || cfg.method == Method::mst_cut ||
      (cfg.potential && cfg.potential->method == PotentialMethod::kernel);
  if (needs_all_pairs) dist.materialize();
  watch.lap();

  if (cfg.method == Method::mst_cut) {
    result.tree = mst(dist);
    result.times.graph = watch.lap();
    result.plot = edge_plot(result.tree);
    if (assign) {
      result.labels = mst_cut(result.tree, cfg.cut.count.value_or(0));
      if (cfg.cut.threshold) {
        std::size_t k = 0;
        while (k < result.plot.size() && result.plot.entries[k].length > *cfg.cut.threshold) ++k;
        result.labels = mst_cut(result.tree, k);
      }
      result.times.cut_assign = watch.lap();
    }
  } else {
    const bool needs_graph =
        cfg.method != Method::nd || cfg.potential->method == PotentialMethod::local;
    NeighborGraph graph;
    if (needs_graph) graph = build_graph(cfg.graph, dist);
    result.times.graph = watch.lap();

    const PotentialField potential = cfg.potential->method == PotentialMethod::kernel
                                         ? kernel_potential(dist, cfg.potential->sigma)
                                         : local_potential(dist, graph);
    result.times.potential = watch.lap();

    if (cfg.method == Method::nd) {
      result.forest = nd_full(potential, dist);
      result.nnd_roots = result.forest.roots.size();
      result.times.step4 = watch.lap();
    } else {
      result.forest = nnd_pass(graph, potential, dist);
      result.nnd_roots = result.forest.roots.size();
      result.times.step3 = watch.lap();
      if (cfg.method == Method::hnnd) {
        merge_roots(result.forest, potential, dist);
        result.times.step4 = watch.lap();
      }
    }
    result.plot = edge_plot(result.forest, dist);
    watch.lap();
    if (assign) {
      result.labels = cfg.cut.threshold
                          ? cut_by_threshold(result.forest, result.plot, *cfg.cut.threshold)
                          : cut_by_count(result.forest, result.plot, cfg.cut.count.value_or(0));
      result.times.cut_assign = watch.lap();
    }
  }
  if (result.labels && ds.has_truth()) result.error = error_rate(*result.labels, ds.truth());
  result.times.total = total.lap();
  return result;
}

inline nlohmann::json summary_json(const RunResult& r, std::optional<std::size_t> saliency_k = {}) {
  nlohmann::json j;
  j["method"] = std::string(to_string(r.method));
  j["N"] = r.n;
  j["d"] = r.d;
  j["C"] = r.labels ? nlohmann::json(r.labels->count) : nlohmann::json(nullptr);
  j["errors"] = r.error ? nlohmann::json(r.error->errors) : nlohmann::json(nullptr);
  j["rate"] = r.error ? nlohmann::json(r.error->rate) : nlohmann::json(nullptr);
  if (r.method != Method::mst_cut) j["nnd_roots"] = r.nnd_roots;
  j["timings"] = {{"graph", r.times.graph},          {"potential", r.times.potential},
                  {"step3", r.times.step3},          {"step4", r.times.step4},
                  {"cut_assign", r.times.cut_assign}, {"total", r.times.total}};
  std::vector<double> top;
  for (std::size_t k = 0; k < r.plot.size() && k < 20; ++k) top.push_back(r.plot.entries[k].length);
  j["top_edge_lengths"] = top;
  if (saliency_k) {
    if (*saliency_k >= 1 && *saliency_k < r.plot.size()) {
      const double gap = saliency_gap(r.plot, *saliency_k);
      j["saliency_gap"] = std::isfinite(gap) ? nlohmann::json(gap) : nlohmann::json("inf");
    } else {
      j["saliency_gap"] = nullptr;
    }
  }
  return j;
}

/// Writes through a sibling temporary file and renames it into place.
inline void write_atomically(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + tmp.string() + "'");
    body(out);
    out.flush();
    if (!out) throw UsageError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

inline void write_outputs(const RunConfig& cfg, const Dataset& ds, const RunResult& r,
                          const nlohmann::json& summary) {
  if (!cfg.labels_out.empty() && r.labels) {
    write_atomically(cfg.labels_out, [&](std::ostream& o) { write_labels(*r.labels, o); });
  }
  if (!cfg.edgeplot_out.empty()) {
    write_atomically(cfg.edgeplot_out, [&](std::ostream& o) { write_edge_plot(r.plot, o); });
  }
  if (!cfg.summary_out.empty()) {
    write_atomically(cfg.summary_out, [&](std::ostream& o) { o << summary.dump(2) << '\n'; });
  }
  const bool descent = r.method != Method::mst_cut;
  if (!cfg.parents_out.empty() && descent) {
    Distances dist(ds, cfg.resolved_metric(), 0);
    write_atomically(cfg.parents_out, [&](std::ostream& o) { write_parents(r.forest, dist, o); });
  }
  if (!cfg.potential_out.empty() && descent) {
    Distances dist(ds, cfg.resolved_metric(), 0);
    NeighborGraph graph;
    if (cfg.potential->method == PotentialMethod::local) graph = build_graph(cfg.graph, dist);
    const auto field = cfg.potential->method == PotentialMethod::kernel
                           ? kernel_potential(dist, cfg.potential->sigma)
                           : local_potential(dist, graph);
    write_atomically(cfg.potential_out, [&](std::ostream& o) { write_potential(field, o); });
  }
  if (!cfg.graph_out.empty()) {
    Distances dist(ds, cfg.resolved_metric(), 0);
    const auto graph = build_graph(cfg.graph, dist);
    write_atomically(cfg.graph_out, [&](std::ostream& o) { write_edge_list(graph, dist, o); });
  }
}

/// Full run with cut and assignment; writes every requested output.
inline nlohmann::json cmd_cluster(const RunConfig& cfg) {
  validate(cfg);
  const Dataset ds = load_input(cfg);
  const RunResult r = run_pipeline(ds, cfg, true);
  auto summary = summary_json(r);
  write_outputs(cfg, ds, r, summary);
  return summary;
}

/// Runs through the edge plot only and writes it; the user picks a cut
/// from it and re-runs cmd_cluster.
inline nlohmann::json cmd_edgeplot(const RunConfig& cfg) {
  validate(cfg);
  if (cfg.edgeplot_out.empty()) throw ConfigError("edgeplot needs an output path (--edgeplot-out)");
  const Dataset ds = load_input(cfg);
  const RunResult r = run_pipeline(ds, cfg, false);
  write_atomically(cfg.edgeplot_out, [&](std::ostream& o) { write_edge_plot(r.plot, o); });
  return summary_json(r);
}

/// Side-by-side mst-cut, nd and hnnd with one cut count and one potential.
inline nlohmann::json cmd_compare(const RunConfig& cfg) {
  if (!cfg.potential || cfg.potential->method != PotentialMethod::kernel) {
    throw ConfigError("compare needs --potential kernel --sigma S");
  }
  const std::size_t k = cfg.cut.count.value_or(0);
  if (cfg.cut.threshold) throw ConfigError("compare takes --cut-count only");
  RunConfig probe = cfg;
  probe.method = Method::hnnd;
  validate(probe);
  const Dataset ds = load_input(cfg);

  nlohmann::json out = nlohmann::json::array();
  for (Method m : {Method::mst_cut, Method::nd, Method::hnnd}) {
    RunConfig run = cfg;
    run.method = m;
    if (m == Method::mst_cut) run.potential.reset();
    const RunResult r = run_pipeline(ds, run, true);
    out.push_back(summary_json(r, k));
  }
  if (!cfg.summary_out.empty()) {
    write_atomically(cfg.summary_out, [&](std::ostream& o) { o << out.dump(2) << '\n'; });
  }
  return out;
}

}  // namespace hnnd
