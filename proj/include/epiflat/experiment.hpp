#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "epiflat/centrality.hpp"
#include "epiflat/epidemic.hpp"
#include "epiflat/generators.hpp"

namespace epiflat {

struct ExperimentConfig {
  NodeId n = 200;
  NodeId m = 2;
  int replicates = 10;
  std::vector<double> gcc_targets = {0.116, 0.156, 0.186, 0.192};
  double isolation_fraction = 0.03;
  std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  std::uint64_t master_seed = 37;
  double calibration_tolerance = 0.01;
};

// Strict JSON config: exactly the field names above, all optional, unknown
// keys rejected. Measures accept full names or table labels.
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);

/// One infection curve averaged over replicates: either the baseline
/// ("None", all nodes seeded) or a measure cell (top-scoring nodes isolated,
/// the rest seeded).
struct CurveCell {
  std::string curve;                // "None" or a measure label
  NodeId sources = 0;               // seeded nodes per replicate
  std::vector<double> mean_counts;  // index = time step, averaged over replicates
  double mean_unreachable = 0.0;
  CurvePeak peak;                   // of the mean curve, t >= 1
  std::optional<GammaFit> gamma;    // nullopt when the fit is degenerate
};

struct LevelResult {
  double gcc_target = 0.0;
  double triad_probability = 0.0;   // calibrated
  double calibrated_mean_gcc = 0.0; // over the calibration samples
  double replicate_mean_gcc = 0.0;  // over the replicate graphs actually used
  std::vector<CurveCell> cells;     // baseline first, then config order
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<LevelResult> levels;
};

// Full pipeline: per clustering level, calibrate the triad probability, grow
// `replicates` graphs (replicate r reuses calibration sample seed r), score
// centralities on the intact graph, isolate the top fraction per measure, and
// average the all-sources infection curves across replicates. Deterministic
// for a given config, including under OpenMP.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Peak counts per curve and level as an aligned text table.
std::string peak_table(const ExperimentResult& result);

enum class ExportFormat { Csv, Json };

// csv writes <dir>/curves.csv and <dir>/peaks.csv; json writes
// <dir>/result.json. Bytes depend only on the result.
void export_result(const ExperimentResult& result, ExportFormat format,
                   const std::filesystem::path& dir);

std::string result_to_json(const ExperimentResult& result);
ExperimentResult result_from_json(const std::string& text);

}  // namespace epiflat
