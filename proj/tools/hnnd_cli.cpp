// Command-line driver: cluster, edgeplot, compare, render2d.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hnnd/hnnd.hpp"

namespace {

struct Flags {
  std::string input;
  bool categorical = false;
  std::optional<std::size_t> truth_column;
  std::string truth_file;
  std::string metric;
  std::string graph = "knn";
  std::size_t k = 10;
  bool symmetrize = false;
  std::string graph_file;
  std::string potential;
  std::optional<double> sigma;
  std::string method = "hnnd";
  std::optional<std::size_t> cut_count;
  std::optional<double> cut_threshold;
  bool normalize = false;
  std::size_t cache_limit = hnnd::Distances::default_cache_limit;
  std::string labels_out, edgeplot_out, summary_out, parents_out, potential_out, graph_out;
};

void add_pipeline_flags(CLI::App& cmd, Flags& f, bool with_method) {
  cmd.add_option("-i,--input", f.input, "Delimited data file")->required();
  cmd.add_flag("--categorical", f.categorical, "Cells are symbols, not reals");
  cmd.add_option("--truth-column", f.truth_column, "0-based column holding class labels");
  cmd.add_option("--truth-file", f.truth_file, "One class label per line");
  cmd.add_option("--metric", f.metric, "euclidean | cosine | mismatch");
  cmd.add_option("--graph", f.graph, "knn | dt | mst | complete | file");
  cmd.add_option("--k", f.k, "Neighbors per node for --graph knn");
  cmd.add_flag("--symmetrize", f.symmetrize, "Use the symmetric closure of the k-NN graph");
  cmd.add_option("--graph-file", f.graph_file, "Edge list 'u v' for --graph file");
  cmd.add_option("--potential", f.potential, "kernel | local");
  cmd.add_option("--sigma", f.sigma, "Kernel bandwidth");
  if (with_method) cmd.add_option("--method", f.method, "nd | nnd | hnnd | mst-cut");
  auto* count = cmd.add_option("--cut-count", f.cut_count, "Remove this many longest edges");
  auto* threshold = cmd.add_option("--cut-threshold", f.cut_threshold, "Remove edges longer than this");
  count->excludes(threshold);
  cmd.add_flag("--normalize", f.normalize, "Min-max scale every column to [0, 1]");
  cmd.add_option("--cache-limit", f.cache_limit, "Largest N for a stored distance matrix");
  cmd.add_option("--labels-out", f.labels_out, "Write 'id,label' rows");
  cmd.add_option("--edgeplot-out", f.edgeplot_out, "Write 'rank,length,child,parent' rows");
  cmd.add_option("--summary-out", f.summary_out, "Write the JSON summary");
  cmd.add_option("--parents-out", f.parents_out, "Write 'i parent length' rows");
  cmd.add_option("--potential-out", f.potential_out, "Write 'i potential' rows");
  cmd.add_option("--graph-out", f.graph_out, "Write the neighbor graph as 'u v length' rows");
}

hnnd::RunConfig to_config(const Flags& f) {
  hnnd::RunConfig cfg;
  cfg.input = f.input;
  cfg.kind = f.categorical ? hnnd::DataKind::categorical : hnnd::DataKind::numeric;
  cfg.truth_column = f.truth_column;
  cfg.truth_file = f.truth_file;
  if (!f.metric.empty()) cfg.metric = hnnd::parse_metric(f.metric);
  cfg.graph.kind = hnnd::parse_graph_source(f.graph);
  cfg.graph.k = f.k;
  cfg.graph.symmetrize = f.symmetrize;
  cfg.graph.edge_file = f.graph_file;
  if (!f.potential.empty() || f.sigma) {
    hnnd::PotentialSpec p;
    p.method = f.potential.empty() ? hnnd::PotentialMethod::kernel
                                   : hnnd::parse_potential_method(f.potential);
    p.sigma = f.sigma.value_or(0.0);
    if (p.method == hnnd::PotentialMethod::local && f.sigma) {
      throw hnnd::ConfigError("--sigma applies only to --potential kernel");
    }
    cfg.potential = p;
  }
  cfg.method = hnnd::parse_method(f.method);
  cfg.cut.count = f.cut_count;
  cfg.cut.threshold = f.cut_threshold;
  cfg.normalize = f.normalize;
  cfg.cache_limit = f.cache_limit;
  cfg.labels_out = f.labels_out;
  cfg.edgeplot_out = f.edgeplot_out;
  cfg.summary_out = f.summary_out;
  cfg.parents_out = f.parents_out;
  cfg.potential_out = f.potential_out;
  cfg.graph_out = f.graph_out;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"In-tree clustering by (hierarchical) nearest neighbor descent"};
  app.require_subcommand(1);

  Flags cluster_flags, edgeplot_flags, compare_flags;
  auto* cluster = app.add_subcommand("cluster", "Build the in-tree, cut it and assign labels");
  add_pipeline_flags(*cluster, cluster_flags, true);
  auto* edgeplot = app.add_subcommand("edgeplot", "Build the in-tree and write its edge plot");
  add_pipeline_flags(*edgeplot, edgeplot_flags, true);
  auto* compare = app.add_subcommand("compare", "Run mst-cut, nd and hnnd with the same cut");
  add_pipeline_flags(*compare, compare_flags, false);

  std::string render_input, render_labels, render_out;
  auto* render = app.add_subcommand("render2d", "Draw a labelled 2-D dataset as SVG");
  render->add_option("-i,--input", render_input, "2-D numeric data file")->required();
  render->add_option("--labels", render_labels, "'id,label' file from cluster")->required();
  render->add_option("-o,--out", render_out, "SVG output path")->required();
  std::optional<std::size_t> render_truth_column;
  render->add_option("--truth-column", render_truth_column, "Column to drop before plotting");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cluster->parsed()) {
      std::cout << hnnd::cmd_cluster(to_config(cluster_flags)).dump(2) << '\n';
    } else if (edgeplot->parsed()) {
      std::cout << hnnd::cmd_edgeplot(to_config(edgeplot_flags)).dump(2) << '\n';
    } else if (compare->parsed()) {
      std::cout << hnnd::cmd_compare(to_config(compare_flags)).dump(2) << '\n';
    } else if (render->parsed()) {
      const auto ds = hnnd::load_file(render_input, hnnd::DataKind::numeric, render_truth_column);
      std::ifstream in(render_labels);
      if (!in) throw hnnd::UsageError("cannot open labels file '" + render_labels + "'");
      const auto labels = hnnd::read_labels_file(in);
      hnnd::write_atomically(render_out, [&](std::ostream& o) { hnnd::render_svg(ds, labels, o); });
    }
  } catch (const std::exception& e) {
    std::cerr << "hnnd: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
