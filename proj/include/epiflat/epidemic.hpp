#pragma once

#include <cstdint>
#include <span>

#include "epiflat/graph.hpp"

namespace epiflat {

/// Infection counts by time step. With transmission probability ~1 a
/// susceptible node is infected exactly at its hop distance from the nearest
/// source, so counts[t] is the number of (source, node) pairs at distance t
/// and counts[0] is the number of sources.
struct InfectionCurve {
  std::vector<std::int64_t> counts;     // counts[t], t = 0 .. max distance
  std::int64_t unreachable_count = 0;   // pairs no path connects
  std::int64_t normalization = 0;       // total infections at t >= 1

  std::int64_t total() const;           // all counts including t = 0
};

// Single-source curve: histogram of BFS distances from `source`.
InfectionCurve infection_histogram(const Graph& g, NodeId source);

// Sum of single-source curves over every listed source (duplicates rejected).
InfectionCurve aggregate_curve(const Graph& g, std::span<const NodeId> sources);

struct GammaFit {
  double shape = 0.0;  // k
  double scale = 0.0;  // theta
  double mean() const { return shape * scale; }
  // Density mode (k - 1) * theta; meaningful for shape > 1.
  double mode() const { return (shape - 1.0) * scale; }
};

// Method-of-moments gamma fit to the distance sample at t >= 1 (t = 0 sources
// excluded): shape = mean^2 / variance, scale = variance / mean, population
// variance. Throws DEGENERATE_SAMPLE when fewer than two distinct distances
// carry counts.
GammaFit fit_gamma(const InfectionCurve& curve);
GammaFit fit_gamma(std::span<const double> counts);  // weights by time step

struct CurvePeak {
  std::size_t t = 0;
  double count = 0.0;
};

// Highest bin at t >= 1, ties resolved toward the smaller t. Throws
// EMPTY_CURVE when no infections occur at t >= 1.
CurvePeak curve_peak(const InfectionCurve& curve);
CurvePeak curve_peak(std::span<const double> counts);

// Count-weighted mean time step over t >= 1.
double mean_distance(const InfectionCurve& curve);

namespace serial {

InfectionCurve aggregate_curve(const Graph& g, std::span<const NodeId> sources);

}  // namespace serial

}  // namespace epiflat
