#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unistd.h>

#include "doctest.h"

#include "epiflat/epidemic.hpp"
#include "epiflat/error.hpp"
#include "epiflat/experiment.hpp"
#include "epiflat/rng.hpp"

using namespace epiflat;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a throw");
  return ErrorCode::InvalidParams;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("epiflat_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

ExperimentConfig tiny_config() {
  ExperimentConfig config;
  config.n = 60;
  config.m = 2;
  config.replicates = 2;
  config.gcc_targets = {0.15};
  config.measures = {Measure::Degree};
  config.master_seed = 5;
  return config;
}

}  // namespace

TEST_SUITE("experiment") {
  TEST_CASE("empty json keeps the defaults") {
    const ExperimentConfig config = config_from_json("{}");
    CHECK(config.n == 200);
    CHECK(config.m == 2);
    CHECK(config.replicates == 10);
    CHECK(config.gcc_targets == std::vector<double>{0.116, 0.156, 0.186, 0.192});
    CHECK(config.isolation_fraction == 0.03);
    CHECK(config.measures.size() == 7);
    CHECK(config.master_seed == 37);
    CHECK(config.calibration_tolerance == 0.01);
  }

  TEST_CASE("config json round trip") {
    ExperimentConfig config = tiny_config();
    config.measures = {Measure::PageRank, Measure::Degree};
    const ExperimentConfig back = config_from_json(config_to_json(config));
    CHECK(back.n == config.n);
    CHECK(back.m == config.m);
    CHECK(back.replicates == config.replicates);
    CHECK(back.gcc_targets == config.gcc_targets);
    CHECK(back.measures == config.measures);
    CHECK(back.master_seed == config.master_seed);
  }

  TEST_CASE("config parsing is strict") {
    CHECK(code_of([] { config_from_json("{\"bogus\": 1}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { config_from_json("{\"n\": \"many\"}"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { config_from_json("not json"); }) == ErrorCode::ParseError);
    CHECK(code_of([] { config_from_json("{\"measures\": [\"modularity\"]}"); }) ==
          ErrorCode::InvalidParams);
    CHECK(code_of([] { config_from_json("{\"measures\": [\"degree\", \"Deg\"]}"); }) ==
          ErrorCode::InvalidParams);
    CHECK(code_of([] { config_from_json("{\"replicates\": 0}"); }) == ErrorCode::InvalidParams);
    CHECK(code_of([] { config_from_json("{\"isolation_fraction\": 1.0}"); }) ==
          ErrorCode::InvalidParams);
  }

  TEST_CASE("measures parse by name or label in any case") {
    const ExperimentConfig config =
        config_from_json("{\"measures\": [\"DEGREE\", \"page\", \"exf\"]}");
    CHECK(config.measures ==
          std::vector<Measure>{Measure::Degree, Measure::PageRank, Measure::ExpectedForce});
  }

  TEST_CASE("small run has the advertised shape") {
    const ExperimentResult result = run_experiment(tiny_config());
    REQUIRE(result.levels.size() == 1);
    const LevelResult& level = result.levels[0];
    CHECK(level.gcc_target == 0.15);
    CHECK(std::abs(level.calibrated_mean_gcc - 0.15) <= 0.01);

    REQUIRE(level.cells.size() == 2);
    CHECK(level.cells[0].curve == "None");
    CHECK(level.cells[1].curve == "Deg");

    // baseline seeds everyone; the cell seeds everyone but the two isolated
    CHECK(level.cells[0].sources == 60);
    CHECK(level.cells[1].sources == 58);

    for (const CurveCell& cell : level.cells) {
      CHECK(cell.mean_counts.at(0) == static_cast<double>(cell.sources));
      const CurvePeak peak = curve_peak(cell.mean_counts);
      CHECK(peak.t == cell.peak.t);
      CHECK(peak.count == cell.peak.count);

      double mass = cell.mean_unreachable;
      for (double c : cell.mean_counts) mass += c;
      const double expected = static_cast<double>(cell.sources) * 60.0;
      CHECK(std::abs(mass - expected) <= 1e-9 * expected);
    }
  }

  TEST_CASE("zero isolation fraction reproduces the baseline") {
    ExperimentConfig config = tiny_config();
    config.isolation_fraction = 0.0;
    const ExperimentResult result = run_experiment(config);
    const CurveCell& base = result.levels[0].cells[0];
    const CurveCell& cell = result.levels[0].cells[1];
    CHECK(cell.sources == base.sources);
    CHECK(cell.mean_counts == base.mean_counts);
    CHECK(cell.mean_unreachable == base.mean_unreachable);
  }

  TEST_CASE("no measures still yields the baseline") {
    ExperimentConfig config = tiny_config();
    config.measures.clear();
    const ExperimentResult result = run_experiment(config);
    REQUIRE(result.levels[0].cells.size() == 1);
    CHECK(result.levels[0].cells[0].curve == "None");
  }

  TEST_CASE("runs are deterministic") {
    const std::string a = result_to_json(run_experiment(tiny_config()));
    const std::string b = result_to_json(run_experiment(tiny_config()));
    CHECK(a == b);
  }

  TEST_CASE("replicate graphs reuse the calibration sample seeds") {
    ExperimentConfig config = tiny_config();
    config.replicates = 1;
    const ExperimentResult result = run_experiment(config);
    const LevelResult& level = result.levels[0];

    // reconstruct replicate 0 by hand from the documented seeding rule
    const auto seeds = [&] {
      std::vector<std::uint64_t> s;
      for (int j = 0; j < 20; ++j) s.push_back(split_seed(config.master_seed, 0, j));
      return s;
    }();
    const CalibrationResult full = calibrate_triad_probability(
        0.15, config.n, config.m, config.calibration_tolerance, seeds);
    CHECK(full.triad_probability == level.triad_probability);
    CHECK(full.achieved_mean_gcc == level.calibrated_mean_gcc);

    const Graph g = holme_kim({.n = config.n,
                               .m = config.m,
                               .triad_probability = full.triad_probability,
                               .rng_seed = seeds[0]});
    std::vector<NodeId> everyone(g.node_count());
    std::iota(everyone.begin(), everyone.end(), NodeId{0});
    const InfectionCurve base = aggregate_curve(g, everyone);
    REQUIRE(level.cells[0].mean_counts.size() == base.counts.size());
    for (std::size_t t = 0; t < base.counts.size(); ++t) {
      CHECK(level.cells[0].mean_counts[t] == static_cast<double>(base.counts[t]));
    }
    CHECK(level.replicate_mean_gcc ==
          doctest::Approx(*global_clustering_coefficient(g)).epsilon(1e-12));
  }

  TEST_CASE("result json round trips byte for byte") {
    const ExperimentResult result = run_experiment(tiny_config());
    const std::string json = result_to_json(result);
    const ExperimentResult back = result_from_json(json);
    CHECK(result_to_json(back) == json);
  }

  TEST_CASE("export writes csv and json files") {
    const ExperimentResult result = run_experiment(tiny_config());
    TempDir dir;
    export_result(result, ExportFormat::Csv, dir.path);
    export_result(result, ExportFormat::Json, dir.path);

    const std::string curves = slurp(dir.path / "curves.csv");
    CHECK(curves.rfind("gcc_target,curve,t,mean_count,normalized", 0) == 0);
    CHECK(curves.find("None") != std::string::npos);
    CHECK(curves.find("Deg") != std::string::npos);

    const std::string peaks = slurp(dir.path / "peaks.csv");
    CHECK(peaks.rfind("gcc_target,curve,peak_t,peak_count,reduction", 0) == 0);

    // baseline rows carry zero reduction by definition
    std::istringstream lines(peaks);
    std::string line;
    std::getline(lines, line);  // header
    bool saw_baseline = false;
    while (std::getline(lines, line)) {
      if (line.find(",None,") != std::string::npos) {
        saw_baseline = true;
        CHECK(line.substr(line.rfind(',') + 1) == "0");
      }
    }
    CHECK(saw_baseline);

    CHECK(slurp(dir.path / "result.json") == result_to_json(result));
  }

  TEST_CASE("exported pmf columns sum to one per curve") {
    const ExperimentResult result = run_experiment(tiny_config());
    TempDir dir;
    export_result(result, ExportFormat::Csv, dir.path);
    std::istringstream lines(slurp(dir.path / "curves.csv"));
    std::string line;
    std::getline(lines, line);
    std::map<std::string, double> sums;
    while (std::getline(lines, line)) {
      std::istringstream row(line);
      std::string target, curve, t, mean_count, normalized;
      std::getline(row, target, ',');
      std::getline(row, curve, ',');
      std::getline(row, t, ',');
      std::getline(row, mean_count, ',');
      std::getline(row, normalized, ',');
      if (t != "0") sums[target + "/" + curve] += std::stod(normalized);
    }
    REQUIRE(sums.size() == 2);
    for (const auto& [key, sum] : sums) CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  }

  TEST_CASE("peak table lists every curve") {
    const ExperimentResult result = run_experiment(tiny_config());
    const std::string table = peak_table(result);
    CHECK(table.find("None") != std::string::npos);
    CHECK(table.find("Deg") != std::string::npos);
    CHECK(table.find("0.150") != std::string::npos);
  }

  TEST_CASE("peaks are stable under more replicates") {
    ExperimentConfig config;
    config.n = 120;
    config.m = 2;
    config.gcc_targets = {0.156};
    config.measures = {Measure::Degree};
    config.master_seed = 3;
    config.replicates = 10;
    const double ten = run_experiment(config).levels[0].cells[0].peak.count;
    config.replicates = 20;
    const double twenty = run_experiment(config).levels[0].cells[0].peak.count;
    CHECK(std::abs(ten - twenty) / ten < 0.15);
  }
}
