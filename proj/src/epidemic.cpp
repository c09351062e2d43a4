#include "epiflat/epidemic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "epiflat/error.hpp"
#include "kernel_detail.hpp"

namespace epiflat {

std::int64_t InfectionCurve::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

namespace {

void check_sources(const Graph& g, std::span<const NodeId> sources) {
  if (sources.empty()) throw Error(ErrorCode::InvalidParams, "need at least one source");
  std::vector<char> seen(g.node_count(), 0);
  for (NodeId s : sources) {
    if (s >= g.node_count()) {
      throw Error(ErrorCode::OutOfRange, "source " + std::to_string(s) + " out of range");
    }
    if (seen[s]) throw Error(ErrorCode::InvalidParams, "duplicate source " + std::to_string(s));
    seen[s] = 1;
  }
}

void finalize(InfectionCurve& curve) {
  std::int64_t infected = 0;
  for (std::size_t t = 1; t < curve.counts.size(); ++t) infected += curve.counts[t];
  curve.normalization = infected;
}

void bin_distances(const std::vector<std::int32_t>& dist, std::vector<std::int64_t>& hist,
                   std::int64_t& unreachable) {
  for (std::int32_t d : dist) {
    if (d == kUnreachable) {
      ++unreachable;
      continue;
    }
    const auto t = static_cast<std::size_t>(d);
    if (t >= hist.size()) hist.resize(t + 1, 0);
    ++hist[t];
  }
}

}  // namespace

InfectionCurve infection_histogram(const Graph& g, NodeId source) {
  const DistanceMap map = bfs_distances(g, source);
  InfectionCurve curve;
  curve.counts.assign(1, 0);
  bin_distances(map.dist, curve.counts, curve.unreachable_count);
  finalize(curve);
  return curve;
}

InfectionCurve aggregate_curve(const Graph& g, std::span<const NodeId> sources) {
  check_sources(g, sources);
  const NodeId n = g.node_count();
  InfectionCurve curve;
  curve.counts.assign(1, 0);
#pragma omp parallel
  {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue;
    queue.reserve(n);
    std::vector<std::int64_t> hist(1, 0);
    std::int64_t unreachable = 0;
#pragma omp for schedule(dynamic, 8) nowait
    for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(sources.size()); ++idx) {
      detail::bfs_scratch(g, sources[static_cast<std::size_t>(idx)], dist, queue);
      bin_distances(dist, hist, unreachable);
    }
    // Histogram merging is integer arithmetic, so the merge order (and with
    // it the thread count) cannot change the result.
#pragma omp critical
    {
      if (hist.size() > curve.counts.size()) curve.counts.resize(hist.size(), 0);
      for (std::size_t t = 0; t < hist.size(); ++t) curve.counts[t] += hist[t];
      curve.unreachable_count += unreachable;
    }
  }
  finalize(curve);
  return curve;
}

GammaFit fit_gamma(const InfectionCurve& curve) {
  std::vector<double> weights(curve.counts.begin(), curve.counts.end());
  return fit_gamma(std::span<const double>(weights));
}

GammaFit fit_gamma(std::span<const double> counts) {
  double total = 0.0;
  double sum = 0.0;
  std::size_t support = 0;
  for (std::size_t t = 1; t < counts.size(); ++t) {
    const double w = counts[t];
    if (w < 0.0) throw Error(ErrorCode::InvalidParams, "negative count in curve");
    if (w > 0.0) {
      ++support;
      total += w;
      sum += w * static_cast<double>(t);
    }
  }
  if (support < 2) {
    throw Error(ErrorCode::DegenerateSample,
                "gamma fit needs counts at two distinct time steps");
  }
  const double mean = sum / total;
  double sq = 0.0;
  for (std::size_t t = 1; t < counts.size(); ++t) {
    if (counts[t] > 0.0) {
      const double d = static_cast<double>(t) - mean;
      sq += counts[t] * d * d;
    }
  }
  const double variance = sq / total;  // population variance
  GammaFit fit;
  fit.shape = mean * mean / variance;
  fit.scale = variance / mean;
  return fit;
}

CurvePeak curve_peak(const InfectionCurve& curve) {
  std::vector<double> weights(curve.counts.begin(), curve.counts.end());
  return curve_peak(std::span<const double>(weights));
}

CurvePeak curve_peak(std::span<const double> counts) {
  CurvePeak peak{0, 0.0};
  for (std::size_t t = 1; t < counts.size(); ++t) {
    if (counts[t] > peak.count) {
      peak.t = t;
      peak.count = counts[t];
    }
  }
  if (peak.t == 0) throw Error(ErrorCode::EmptyCurve, "no infections at t >= 1");
  return peak;
}

double mean_distance(const InfectionCurve& curve) {
  std::int64_t total = 0;
  std::int64_t sum = 0;
  for (std::size_t t = 1; t < curve.counts.size(); ++t) {
    total += curve.counts[t];
    sum += curve.counts[t] * static_cast<std::int64_t>(t);
  }
  if (total == 0) throw Error(ErrorCode::EmptyCurve, "no infections at t >= 1");
  return static_cast<double>(sum) / static_cast<double>(total);
}

namespace serial {

InfectionCurve aggregate_curve(const Graph& g, std::span<const NodeId> sources) {
  check_sources(g, sources);
  InfectionCurve curve;
  curve.counts.assign(1, 0);
  for (NodeId s : sources) {
    const InfectionCurve single = infection_histogram(g, s);
    if (single.counts.size() > curve.counts.size()) curve.counts.resize(single.counts.size(), 0);
    for (std::size_t t = 0; t < single.counts.size(); ++t) curve.counts[t] += single.counts[t];
    curve.unreachable_count += single.unreachable_count;
  }
  finalize(curve);
  return curve;
}

}  // namespace serial

}  // namespace epiflat
