#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epiflat/graph.hpp"
#include "epiflat/rng.hpp"

namespace epiflat {

struct GeneratorParams {
  NodeId n = 0;                    // final node count, must be >= m + 1
  NodeId m = 1;                    // edges attached per new node, >= 1
  double triad_probability = 0.0;  // triad-closure chance (triad builder only)
  std::uint64_t rng_seed = 0;
};

/// Degree-proportional attachment sampler backed by a repeated-id list: a
/// node appears once per unit of degree weight, so a uniform index into the
/// list draws proportionally to degree. Rejection handles exclusions.
class AttachmentSampler {
 public:
  void add(NodeId node, std::size_t copies);
  std::size_t size() const noexcept { return ids_.size(); }

  // Draw proportional to weight, rejecting ids for which excluded(id) holds.
  // At least one admissible id must exist.
  template <typename Pred>
  NodeId sample(RngStream& rng, Pred&& excluded) const {
    for (;;) {
      NodeId candidate = ids_[rng.uniform_index(ids_.size())];
      if (!excluded(candidate)) return candidate;
    }
  }

 private:
  std::vector<NodeId> ids_;
};

// Preferential-attachment growth. Starts from a complete graph on m + 1
// nodes; each later node attaches m edges to distinct targets drawn
// proportionally to degree, with degrees snapshotted at the start of the
// node's round. Edge count is exactly C(m+1,2) + (n-m-1)*m.
Graph barabasi_albert(const GeneratorParams& params, RngStream& rng);
Graph barabasi_albert(const GeneratorParams& params);

// Same growth process with triad closure. A node's first attachment is
// always preferential; each later one is, with probability triad_probability,
// a triad step: connect to a uniformly chosen neighbor of the previously
// attached target (skipping the new node and nodes already linked to it),
// falling back to preferential attachment when no candidate remains.
// With triad_probability == 0 the decision draw is skipped entirely, so the
// output matches barabasi_albert bit for bit on the same stream.
Graph holme_kim(const GeneratorParams& params, RngStream& rng);
Graph holme_kim(const GeneratorParams& params);

struct CalibrationResult {
  double triad_probability = 0.0;
  double achieved_mean_gcc = 0.0;
  double band_low = 0.0;   // sample-mean clustering at triad_probability = 0
  double band_high = 0.0;  // and at triad_probability = 1
  int samples = 0;
  int iterations = 0;  // bisection steps after the two band evaluations
};

// Mean global clustering over one generated graph per sample seed.
double mean_clustering(NodeId n, NodeId m, double triad_probability,
                       std::span<const std::uint64_t> sample_seeds);

// Bisection on triad_probability until the sample-mean clustering is within
// tol of target (the search itself aims for tol/2 to leave slack). The same
// sample seeds are reused at every probed probability, which makes the
// objective a deterministic, near-monotone function of the probability.
// Throws UNREACHABLE_TARGET (message carries the measured band) when the
// target lies outside [band_low - tol, band_high + tol], and NO_CONVERGENCE
// if max_iterations bisection steps never land within tol.
CalibrationResult calibrate_triad_probability(double target_gcc, NodeId n, NodeId m, double tol,
                                              std::span<const std::uint64_t> sample_seeds,
                                              int max_iterations = 30);

// Convenience overload: derives `samples` seeds as split_seed(base_seed, 0, j).
CalibrationResult calibrate_triad_probability(double target_gcc, NodeId n, NodeId m, double tol,
                                              std::uint64_t base_seed, int samples = 20,
                                              int max_iterations = 30);

}  // namespace epiflat
