#include "epiflat/experiment.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "epiflat/error.hpp"

namespace epiflat {

using ordered_json = nlohmann::ordered_json;

namespace {

// Shortest round-trip decimal form, used for every double written to CSV so
// exports are byte-stable.
std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

void validate_config(const ExperimentConfig& config) {
  if (config.m < 1) throw Error(ErrorCode::InvalidParams, "m must be >= 1");
  if (config.n < config.m + 1) throw Error(ErrorCode::InvalidParams, "n must be >= m + 1");
  if (config.replicates < 1) throw Error(ErrorCode::InvalidParams, "replicates must be >= 1");
  if (!(config.isolation_fraction >= 0.0 && config.isolation_fraction < 1.0)) {
    throw Error(ErrorCode::InvalidParams, "isolation_fraction must lie in [0, 1)");
  }
  if (!(config.calibration_tolerance > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "calibration_tolerance must be positive");
  }
  for (double t : config.gcc_targets) {
    if (!(t > 0.0 && t < 1.0)) {
      throw Error(ErrorCode::InvalidParams, "gcc_targets entries must lie in (0, 1)");
    }
  }
  std::set<Measure> seen;
  for (Measure m : config.measures) {
    if (!seen.insert(m).second) {
      throw Error(ErrorCode::InvalidParams,
                  "duplicate measure '" + std::string(measure_name(m)) + "'");
    }
  }
}

ordered_json config_json(const ExperimentConfig& config) {
  ordered_json j;
  j["n"] = config.n;
  j["m"] = config.m;
  j["replicates"] = config.replicates;
  j["gcc_targets"] = config.gcc_targets;
  j["isolation_fraction"] = config.isolation_fraction;
  ordered_json measures = ordered_json::array();
  for (Measure m : config.measures) measures.push_back(std::string(measure_name(m)));
  j["measures"] = measures;
  j["master_seed"] = config.master_seed;
  j["calibration_tolerance"] = config.calibration_tolerance;
  return j;
}

std::uint64_t require_unsigned(const ordered_json& v, const char* field) {
  if (!v.is_number_unsigned()) {
    throw Error(ErrorCode::ParseError, std::string(field) + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

double require_number(const ordered_json& v, const char* field) {
  if (!v.is_number()) throw Error(ErrorCode::ParseError, std::string(field) + " must be a number");
  return v.get<double>();
}

ExperimentConfig config_from(const ordered_json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
  static const std::set<std::string> known = {
      "n",        "m",           "replicates",  "gcc_targets",
      "isolation_fraction", "measures", "master_seed", "calibration_tolerance"};
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) {
      throw Error(ErrorCode::ParseError, "unknown config field '" + item.key() + "'");
    }
  }
  ExperimentConfig config;
  if (j.contains("n")) config.n = static_cast<NodeId>(require_unsigned(j["n"], "n"));
  if (j.contains("m")) config.m = static_cast<NodeId>(require_unsigned(j["m"], "m"));
  if (j.contains("replicates")) {
    config.replicates = static_cast<int>(require_unsigned(j["replicates"], "replicates"));
  }
  if (j.contains("gcc_targets")) {
    if (!j["gcc_targets"].is_array()) {
      throw Error(ErrorCode::ParseError, "gcc_targets must be an array");
    }
    config.gcc_targets.clear();
    for (const auto& v : j["gcc_targets"]) {
      config.gcc_targets.push_back(require_number(v, "gcc_targets entry"));
    }
  }
  if (j.contains("isolation_fraction")) {
    config.isolation_fraction = require_number(j["isolation_fraction"], "isolation_fraction");
  }
  if (j.contains("measures")) {
    if (!j["measures"].is_array()) throw Error(ErrorCode::ParseError, "measures must be an array");
    config.measures.clear();
    for (const auto& v : j["measures"]) {
      if (!v.is_string()) throw Error(ErrorCode::ParseError, "measures entries must be strings");
      const auto parsed = parse_measure(v.get<std::string>());
      if (!parsed) {
        throw Error(ErrorCode::InvalidParams, "unknown measure '" + v.get<std::string>() + "'");
      }
      config.measures.push_back(*parsed);
    }
  }
  if (j.contains("master_seed")) config.master_seed = require_unsigned(j["master_seed"], "master_seed");
  if (j.contains("calibration_tolerance")) {
    config.calibration_tolerance = require_number(j["calibration_tolerance"], "calibration_tolerance");
  }
  validate_config(config);
  return config;
}

}  // namespace

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  return config_from(j);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

std::string config_to_json(const ExperimentConfig& config) {
  return config_json(config).dump(2) + "\n";
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  ExperimentResult result;
  result.config = config;

  const NodeId n = config.n;
  const int samples = std::max(20, config.replicates);

  for (std::size_t level = 0; level < config.gcc_targets.size(); ++level) {
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(samples));
    for (int j = 0; j < samples; ++j) {
      seeds[static_cast<std::size_t>(j)] =
          split_seed(config.master_seed, level, static_cast<std::uint64_t>(j));
    }
    const CalibrationResult cal = calibrate_triad_probability(
        config.gcc_targets[level], n, config.m, config.calibration_tolerance, seeds);

    LevelResult lr;
    lr.gcc_target = config.gcc_targets[level];
    lr.triad_probability = cal.triad_probability;
    lr.calibrated_mean_gcc = cal.achieved_mean_gcc;

    const std::size_t cells = 1 + config.measures.size();
    std::vector<std::vector<double>> count_sums(cells);
    std::vector<double> unreachable_sums(cells, 0.0);
    std::vector<NodeId> cell_sources(cells, 0);
    auto add_curve = [&](std::size_t cell, const InfectionCurve& curve) {
      auto& sums = count_sums[cell];
      if (curve.counts.size() > sums.size()) sums.resize(curve.counts.size(), 0.0);
      for (std::size_t t = 0; t < curve.counts.size(); ++t) {
        sums[t] += static_cast<double>(curve.counts[t]);
      }
      unreachable_sums[cell] += static_cast<double>(curve.unreachable_count);
    };

    double gcc_sum = 0.0;
    std::vector<NodeId> everyone(n);
    std::iota(everyone.begin(), everyone.end(), NodeId{0});
    for (int r = 0; r < config.replicates; ++r) {
      // Replicate r reuses calibration sample seed r, so the graphs scored
      // here are the ones the calibration actually measured.
      const Graph g = holme_kim({.n = n,
                                 .m = config.m,
                                 .triad_probability = cal.triad_probability,
                                 .rng_seed = seeds[static_cast<std::size_t>(r)]});
      const auto gcc = global_clustering_coefficient(g);
      if (!gcc) throw Error(ErrorCode::NoTriplets, "replicate graph has no connected triples");
      gcc_sum += *gcc;

      add_curve(0, aggregate_curve(g, everyone));
      cell_sources[0] = n;

      for (std::size_t mi = 0; mi < config.measures.size(); ++mi) {
        const CentralityScores scores = compute_centrality(g, config.measures[mi]);
        const std::vector<NodeId> top = top_fraction(scores, config.isolation_fraction);
        const Graph isolated = isolate_nodes(g, top);

        std::vector<char> removed(n, 0);
        for (NodeId t : top) removed[t] = 1;
        std::vector<NodeId> survivors;
        survivors.reserve(n - top.size());
        for (NodeId v = 0; v < n; ++v) {
          if (!removed[v]) survivors.push_back(v);
        }
        add_curve(1 + mi, aggregate_curve(isolated, survivors));
        cell_sources[1 + mi] = static_cast<NodeId>(survivors.size());
      }
    }
    lr.replicate_mean_gcc = gcc_sum / static_cast<double>(config.replicates);

    for (std::size_t cell = 0; cell < cells; ++cell) {
      CurveCell cc;
      cc.curve = cell == 0 ? "None" : std::string(measure_label(config.measures[cell - 1]));
      cc.sources = cell_sources[cell];
      cc.mean_counts = count_sums[cell];
      for (double& v : cc.mean_counts) v /= static_cast<double>(config.replicates);
      cc.mean_unreachable = unreachable_sums[cell] / static_cast<double>(config.replicates);
      cc.peak = curve_peak(std::span<const double>(cc.mean_counts));
      try {
        cc.gamma = fit_gamma(std::span<const double>(cc.mean_counts));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DegenerateSample) throw;
        cc.gamma = std::nullopt;
      }
      lr.cells.push_back(std::move(cc));
    }
    result.levels.push_back(std::move(lr));
  }
  return result;
}

std::string peak_table(const ExperimentResult& result) {
  std::ostringstream out;
  char buf[64];
  auto cell = [&](const std::string& text) {
    std::snprintf(buf, sizeof(buf), "%10s", text.c_str());
    out << buf;
  };
  out << "Curve   ";
  for (const LevelResult& level : result.levels) {
    std::snprintf(buf, sizeof(buf), "%.3f", level.gcc_target);
    cell(buf);
  }
  out << "\n";
  if (result.levels.empty()) return out.str();
  const std::size_t rows = result.levels.front().cells.size();
  for (std::size_t row = 0; row < rows; ++row) {
    std::snprintf(buf, sizeof(buf), "%-8s", result.levels.front().cells[row].curve.c_str());
    out << buf;
    for (const LevelResult& level : result.levels) {
      std::snprintf(buf, sizeof(buf), "%.1f", level.cells[row].peak.count);
      cell(buf);
    }
    out << "\n";
  }
  return out.str();
}

namespace {

ordered_json result_json(const ExperimentResult& result) {
  ordered_json j;
  j["config"] = config_json(result.config);
  ordered_json levels = ordered_json::array();
  for (const LevelResult& level : result.levels) {
    ordered_json jl;
    jl["gcc_target"] = level.gcc_target;
    jl["triad_probability"] = level.triad_probability;
    jl["calibrated_mean_gcc"] = level.calibrated_mean_gcc;
    jl["replicate_mean_gcc"] = level.replicate_mean_gcc;
    ordered_json cells = ordered_json::array();
    for (const CurveCell& cell : level.cells) {
      ordered_json jc;
      jc["curve"] = cell.curve;
      jc["sources"] = cell.sources;
      jc["mean_counts"] = cell.mean_counts;
      jc["mean_unreachable"] = cell.mean_unreachable;
      jc["peak_t"] = cell.peak.t;
      jc["peak_count"] = cell.peak.count;
      if (cell.gamma) {
        jc["gamma"] = ordered_json{{"shape", cell.gamma->shape}, {"scale", cell.gamma->scale}};
      } else {
        jc["gamma"] = nullptr;
      }
      cells.push_back(std::move(jc));
    }
    jl["cells"] = std::move(cells);
    levels.push_back(std::move(jl));
  }
  j["levels"] = std::move(levels);
  return j;
}

}  // namespace

std::string result_to_json(const ExperimentResult& result) {
  return result_json(result).dump(2) + "\n";
}

ExperimentResult result_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (!j.is_object() || !j.contains("config") || !j.contains("levels")) {
    throw Error(ErrorCode::ParseError, "result document needs 'config' and 'levels'");
  }
  ExperimentResult result;
  result.config = config_from(j["config"]);
  for (const auto& jl : j["levels"]) {
    LevelResult level;
    level.gcc_target = require_number(jl.at("gcc_target"), "gcc_target");
    level.triad_probability = require_number(jl.at("triad_probability"), "triad_probability");
    level.calibrated_mean_gcc = require_number(jl.at("calibrated_mean_gcc"), "calibrated_mean_gcc");
    level.replicate_mean_gcc = require_number(jl.at("replicate_mean_gcc"), "replicate_mean_gcc");
    for (const auto& jc : jl.at("cells")) {
      CurveCell cell;
      cell.curve = jc.at("curve").get<std::string>();
      cell.sources = static_cast<NodeId>(require_unsigned(jc.at("sources"), "sources"));
      for (const auto& v : jc.at("mean_counts")) {
        cell.mean_counts.push_back(require_number(v, "mean_counts entry"));
      }
      cell.mean_unreachable = require_number(jc.at("mean_unreachable"), "mean_unreachable");
      cell.peak.t = static_cast<std::size_t>(require_unsigned(jc.at("peak_t"), "peak_t"));
      cell.peak.count = require_number(jc.at("peak_count"), "peak_count");
      if (!jc.at("gamma").is_null()) {
        GammaFit fit;
        fit.shape = require_number(jc.at("gamma").at("shape"), "gamma shape");
        fit.scale = require_number(jc.at("gamma").at("scale"), "gamma scale");
        cell.gamma = fit;
      }
      level.cells.push_back(std::move(cell));
    }
    result.levels.push_back(std::move(level));
  }
  return result;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::string curves_csv(const ExperimentResult& result) {
  std::string out = "gcc_target,curve,t,mean_count,normalized\n";
  for (const LevelResult& level : result.levels) {
    for (const CurveCell& cell : level.cells) {
      double infected = 0.0;
      for (std::size_t t = 1; t < cell.mean_counts.size(); ++t) infected += cell.mean_counts[t];
      for (std::size_t t = 0; t < cell.mean_counts.size(); ++t) {
        const double normalized = infected > 0.0 ? cell.mean_counts[t] / infected : 0.0;
        out += format_double(level.gcc_target);
        out += ',';
        out += cell.curve;
        out += ',';
        out += std::to_string(t);
        out += ',';
        out += format_double(cell.mean_counts[t]);
        out += ',';
        out += format_double(normalized);
        out += '\n';
      }
    }
  }
  return out;
}

std::string peaks_csv(const ExperimentResult& result) {
  std::string out = "gcc_target,curve,peak_t,peak_count,reduction\n";
  for (const LevelResult& level : result.levels) {
    const double base = level.cells.empty() ? 0.0 : level.cells.front().peak.count;
    for (const CurveCell& cell : level.cells) {
      const double reduction = base > 0.0 ? 1.0 - cell.peak.count / base : 0.0;
      out += format_double(level.gcc_target);
      out += ',';
      out += cell.curve;
      out += ',';
      out += std::to_string(cell.peak.t);
      out += ',';
      out += format_double(cell.peak.count);
      out += ',';
      out += format_double(reduction);
      out += '\n';
    }
  }
  return out;
}

}  // namespace

void export_result(const ExperimentResult& result, ExportFormat format,
                   const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  if (format == ExportFormat::Csv) {
    write_text(dir / "curves.csv", curves_csv(result));
    write_text(dir / "peaks.csv", peaks_csv(result));
  } else {
    write_text(dir / "result.json", result_to_json(result));
  }
}

}  // namespace epiflat
