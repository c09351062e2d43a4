// Command line front end. All numeric work lives in the library; this file
// only parses flags, loads files, and prints results.
//
// Exit codes: 0 success, 1 usage, 2 runtime (convergence, degenerate or
// infeasible inputs), 3 file I/O or parse failures.

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "epiflat/centrality.hpp"
#include "epiflat/edge_io.hpp"
#include "epiflat/epidemic.hpp"
#include "epiflat/error.hpp"
#include "epiflat/experiment.hpp"
#include "epiflat/generators.hpp"
#include "epiflat/graph.hpp"

namespace {

using namespace epiflat;

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitIo = 3;

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

// Any failure while reading an input file is an input problem, line-numbered
// parse faults and out-of-range endpoints included.
Graph load_graph(const std::string& path) {
  try {
    return read_edge_list(path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::exit(kExitIo);
  }
}

int code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
      return kExitIo;
    default:
      return kExitRuntime;
  }
}

std::vector<Measure> resolve_measures(const std::string& requested) {
  if (requested == "all") return {kAllMeasures.begin(), kAllMeasures.end()};
  const auto parsed = parse_measure(requested);
  if (!parsed) throw CLI::ValidationError("--measure", "unknown measure '" + requested + "'");
  return {*parsed};
}

// "all" or a comma-separated id list.
std::vector<NodeId> parse_source_ids(const std::string& text) {
  std::vector<NodeId> ids;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    unsigned long value = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    const auto [p, ec] = std::from_chars(first, last, value);
    if (first == last || ec != std::errc{} || p != last) {
      throw CLI::ValidationError("--sources", "expected 'all' or comma-separated node ids");
    }
    ids.push_back(static_cast<NodeId>(value));
    pos = comma + 1;
  }
  return ids;
}

void write_scores_csv(std::ostream& out, const Graph& g, const std::vector<Measure>& measures) {
  out << "node_id,measure,score\n";
  for (Measure m : measures) {
    const CentralityScores scores = compute_centrality(g, m);
    for (NodeId i = 0; i < g.node_count(); ++i) {
      out << i << ',' << measure_name(m) << ',' << format_double(scores.values[i]) << '\n';
    }
  }
}

void write_curve_csv(std::ostream& out, const InfectionCurve& curve) {
  out << "t,count,normalized\n";
  for (std::size_t t = 0; t < curve.counts.size(); ++t) {
    const double normalized =
        curve.normalization > 0
            ? static_cast<double>(curve.counts[t]) / static_cast<double>(curve.normalization)
            : 0.0;
    out << t << ',' << curve.counts[t] << ',' << format_double(normalized) << '\n';
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SI infection curves and centrality-based isolation on synthetic social networks"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Grow a synthetic scale-free graph");
  std::string gen_model;
  GeneratorParams gen_params;
  std::string gen_out;
  generate->add_option("--model", gen_model, "Growth model")
      ->required()
      ->check(CLI::IsMember({"ba", "hk"}));
  generate->add_option("--n", gen_params.n, "Node count")->required()->check(CLI::PositiveNumber);
  generate->add_option("--m", gen_params.m, "Edges attached per new node")
      ->required()
      ->check(CLI::PositiveNumber);
  auto* gen_p = generate
                    ->add_option("--pt,--triad-probability", gen_params.triad_probability,
                                 "Triad-closure probability (hk only)")
                    ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen_params.rng_seed, "RNG seed");
  generate->add_option("--out", gen_out, "Edge-list output path")->required();

  // gcc
  auto* gcc_cmd = app.add_subcommand("gcc", "Print the global clustering coefficient");
  std::string gcc_graph;
  gcc_cmd->add_option("graph,--in", gcc_graph, "Edge-list file")->required();

  // centrality
  auto* centrality = app.add_subcommand("centrality", "Score nodes and emit CSV");
  std::string cent_graph, cent_measure = "all", cent_out;
  centrality->add_option("graph,--in", cent_graph, "Edge-list file")->required();
  centrality->add_option("--measure", cent_measure,
                         "degree|closeness|betweenness|eigenvector|katz|pagerank|expected_force|all");
  centrality->add_option("--out", cent_out, "CSV output path (default: stdout)");

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Aggregate infection curve from seeded sources");
  std::string curve_graph, curve_out;
  std::string curve_sources = "all";
  double curve_isolate_top = 0.0;
  std::string curve_by = "degree";
  curve_cmd->add_option("graph,--in", curve_graph, "Edge-list file")->required();
  curve_cmd->add_option("--sources", curve_sources, "'all' or comma-separated source ids");
  curve_cmd
      ->add_option("--isolate-top", curve_isolate_top,
                   "Fraction of top-ranked nodes to isolate before seeding")
      ->check(CLI::Range(0.0, 1.0));
  curve_cmd->add_option("--by", curve_by, "Centrality measure ranking the isolation");
  curve_cmd->add_option("--out", curve_out, "Curve CSV output path");

  // isolate
  auto* isolate = app.add_subcommand("isolate", "Remove the top-scoring fraction of nodes");
  std::string iso_graph, iso_by = "degree", iso_out;
  double iso_fraction = 0.03;
  isolate->add_option("graph,--in", iso_graph, "Edge-list file")->required();
  isolate->add_option("--by", iso_by, "Centrality measure used for ranking");
  isolate->add_option("--fraction", iso_fraction, "Fraction of nodes to isolate")
      ->check(CLI::Range(0.0, 1.0));
  isolate->add_option("--out", iso_out, "Edge-list output path")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run the full flattening experiment");
  std::string exp_config, exp_out;
  experiment->add_option("--config", exp_config, "JSON config (defaults when omitted)");
  experiment->add_option("--out-dir,--out", exp_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (generate->parsed()) {
      if (gen_model == "ba" && gen_p->count() > 0) {
        std::cerr << "error: --pt requires --model hk\n";
        return kExitUsage;
      }
      const Graph g =
          gen_model == "ba" ? barabasi_albert(gen_params) : holme_kim(gen_params);
      write_edge_list(g, gen_out);
      return 0;
    }

    if (gcc_cmd->parsed()) {
      const Graph g = load_graph(gcc_graph);
      const auto gcc = global_clustering_coefficient(g);
      if (!gcc) throw Error(ErrorCode::NoTriplets, "graph has no connected triples");
      std::cout << format_double(*gcc) << "\n";
      return 0;
    }

    if (centrality->parsed()) {
      const Graph g = load_graph(cent_graph);
      std::vector<Measure> measures;
      try {
        measures = resolve_measures(cent_measure);
      } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      if (cent_out.empty()) {
        write_scores_csv(std::cout, g, measures);
      } else {
        auto out = open_output(cent_out);
        write_scores_csv(out, g, measures);
      }
      return 0;
    }

    if (curve_cmd->parsed()) {
      const Graph g = load_graph(curve_graph);

      // Ranking happens on the intact graph; isolated nodes are neither
      // seeded nor reachable afterwards.
      Graph working = g;
      std::vector<char> isolated(g.node_count(), 0);
      if (curve_isolate_top > 0.0) {
        const auto measure = parse_measure(curve_by);
        if (!measure) {
          std::cerr << "error: unknown measure '" << curve_by << "'\n";
          return kExitUsage;
        }
        const std::vector<NodeId> top =
            top_fraction(compute_centrality(g, *measure), curve_isolate_top);
        for (NodeId v : top) isolated[v] = 1;
        working = isolate_nodes(g, top);
      }

      std::vector<NodeId> sources;
      if (curve_sources == "all") {
        for (NodeId v = 0; v < g.node_count(); ++v) {
          if (!isolated[v]) sources.push_back(v);
        }
      } else {
        try {
          sources = parse_source_ids(curve_sources);
        } catch (const CLI::ValidationError& e) {
          std::cerr << "error: " << e.what() << "\n";
          return kExitUsage;
        }
        std::erase_if(sources, [&](NodeId s) { return s < isolated.size() && isolated[s]; });
      }
      const InfectionCurve curve = aggregate_curve(working, sources);
      if (!curve_out.empty()) {
        auto out = open_output(curve_out);
        write_curve_csv(out, curve);
      }
      const CurvePeak peak = curve_peak(curve);
      std::cout << "peak_t " << peak.t << "\n";
      std::cout << "peak_count " << static_cast<std::int64_t>(peak.count) << "\n";
      std::cout << "mean_distance " << format_double(mean_distance(curve)) << "\n";
      try {
        const GammaFit fit = fit_gamma(curve);
        std::cout << "gamma_shape " << format_double(fit.shape) << "\n";
        std::cout << "gamma_scale " << format_double(fit.scale) << "\n";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSample) throw;
      }
      std::cout << "unreachable " << curve.unreachable_count << "\n";
      return 0;
    }

    if (isolate->parsed()) {
      const Graph g = load_graph(iso_graph);
      const auto measure = parse_measure(iso_by);
      if (!measure) {
        std::cerr << "error: unknown measure '" << iso_by << "'\n";
        return kExitUsage;
      }
      const CentralityScores scores = compute_centrality(g, *measure);
      const std::vector<NodeId> top = top_fraction(scores, iso_fraction);
      write_edge_list(isolate_nodes(g, top), iso_out);
      return 0;
    }

    if (experiment->parsed()) {
      const ExperimentConfig config =
          exp_config.empty() ? ExperimentConfig{} : load_config(exp_config);
      const ExperimentResult result = run_experiment(config);
      export_result(result, ExportFormat::Csv, exp_out);
      export_result(result, ExportFormat::Json, exp_out);
      std::cout << peak_table(result);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
