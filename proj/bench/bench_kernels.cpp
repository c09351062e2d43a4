// Benchmark of the OpenMP kernels against their serial reference
// implementations. Also reports the largest per-slot deviation, which should
// stay at rounding-error scale.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "epiflat/centrality.hpp"
#include "epiflat/epidemic.hpp"
#include "epiflat/generators.hpp"

namespace {

using namespace epiflat;
using Clock = std::chrono::steady_clock;

template <typename F>
double best_of_ms(int trials, F&& run) {
  double best = 1e300;
  for (int t = 0; t < trials; ++t) {
    const auto start = Clock::now();
    run();
    const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    best = std::min(best, elapsed.count());
  }
  return best;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

void report(const char* kernel, double serial_ms, double parallel_ms, double diff) {
  std::printf("%-16s %12.2f %12.2f %9.2fx %14.3g\n", kernel, serial_ms, parallel_ms,
              serial_ms / parallel_ms, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel benchmark"};
  NodeId n = 4000;
  NodeId m = 2;
  std::uint64_t seed = 1;
  NodeId source_count = 0;  // 0 = all nodes
  int trials = 3;
  app.add_option("--n", n, "Graph size");
  app.add_option("--m", m, "Edges per new node");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--sources", source_count, "Sources for curve aggregation (0 = all)");
  app.add_option("--trials", trials, "Timing repetitions, best kept");
  CLI11_PARSE(app, argc, argv);

  const Graph g = barabasi_albert({.n = n, .m = m, .rng_seed = seed});
  std::printf("graph: n=%u m=%u edges=%zu seed=%llu\n", n, m, g.edge_count(),
              static_cast<unsigned long long>(seed));
  std::printf("%-16s %12s %12s %10s %14s\n", "kernel", "serial_ms", "parallel_ms", "speedup",
              "max_abs_diff");

  if (source_count == 0 || source_count > n) source_count = n;
  std::vector<NodeId> sources(source_count);
  std::iota(sources.begin(), sources.end(), NodeId{0});

  {
    InfectionCurve a, b;
    const double serial_ms = best_of_ms(trials, [&] { a = serial::aggregate_curve(g, sources); });
    const double parallel_ms = best_of_ms(trials, [&] { b = aggregate_curve(g, sources); });
    double diff = std::abs(static_cast<double>(a.unreachable_count - b.unreachable_count));
    const std::size_t len = std::max(a.counts.size(), b.counts.size());
    for (std::size_t t = 0; t < len; ++t) {
      const double av = t < a.counts.size() ? static_cast<double>(a.counts[t]) : 0.0;
      const double bv = t < b.counts.size() ? static_cast<double>(b.counts[t]) : 0.0;
      diff = std::max(diff, std::abs(av - bv));
    }
    report("aggregate_curve", serial_ms, parallel_ms, diff);
  }
  {
    CentralityScores a, b;
    const double serial_ms = best_of_ms(trials, [&] { a = serial::closeness_centrality(g); });
    const double parallel_ms = best_of_ms(trials, [&] { b = closeness_centrality(g); });
    report("closeness", serial_ms, parallel_ms, max_abs_diff(a.values, b.values));
  }
  {
    CentralityScores a, b;
    const double serial_ms = best_of_ms(trials, [&] { a = serial::betweenness_centrality(g); });
    const double parallel_ms = best_of_ms(trials, [&] { b = betweenness_centrality(g); });
    report("betweenness", serial_ms, parallel_ms, max_abs_diff(a.values, b.values));
  }
  {
    CentralityScores a, b;
    const double serial_ms = best_of_ms(trials, [&] { a = serial::expected_force(g); });
    const double parallel_ms = best_of_ms(trials, [&] { b = expected_force(g); });
    report("expected_force", serial_ms, parallel_ms, max_abs_diff(a.values, b.values));
  }
  return 0;
}
