#include "epiflat/generators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "epiflat/error.hpp"

namespace epiflat {

void AttachmentSampler::add(NodeId node, std::size_t copies) {
  ids_.insert(ids_.end(), copies, node);
}

namespace {

void validate(const GeneratorParams& params, bool triadic) {
  if (params.m < 1) throw Error(ErrorCode::InvalidParams, "m must be >= 1");
  if (params.n < params.m + 1) {
    throw Error(ErrorCode::InvalidParams,
                "n must be >= m + 1 (got n=" + std::to_string(params.n) +
                    ", m=" + std::to_string(params.m) + ")");
  }
  if (triadic &&
      !(params.triad_probability >= 0.0 && params.triad_probability <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "triad_probability must lie in [0, 1]");
  }
}

// Shared growth loop. With triad_probability == 0 no triad decision is ever
// drawn, which keeps the stream identical to plain preferential attachment.
Graph grow(const GeneratorParams& params, RngStream& rng) {
  const NodeId n = params.n;
  const NodeId m = params.m;
  const double p_triad = params.triad_probability;

  // Sorted adjacency kept incrementally; triad candidates must be enumerated
  // in ascending id order for run-to-run determinism.
  std::vector<std::vector<NodeId>> adj(n);
  auto connected = [&](NodeId a, NodeId b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  };
  auto add_edge = [&](NodeId a, NodeId b) {
    adj[a].insert(std::lower_bound(adj[a].begin(), adj[a].end(), b), b);
    adj[b].insert(std::lower_bound(adj[b].begin(), adj[b].end(), a), a);
  };

  for (NodeId i = 0; i <= m; ++i) {
    for (NodeId j = i + 1; j <= m; ++j) add_edge(i, j);
  }
  AttachmentSampler sampler;
  for (NodeId i = 0; i <= m; ++i) sampler.add(i, m);

  std::vector<NodeId> chosen;
  std::vector<NodeId> candidates;
  for (NodeId v = m + 1; v < n; ++v) {
    chosen.clear();
    NodeId pivot = 0;
    for (NodeId step = 0; step < m; ++step) {
      NodeId target = 0;
      bool picked = false;
      if (step > 0 && p_triad > 0.0 && rng.uniform_real() < p_triad) {
        candidates.clear();
        for (NodeId w : adj[pivot]) {
          if (w != v && !connected(v, w)) candidates.push_back(w);
        }
        if (!candidates.empty()) {
          target = candidates[rng.uniform_index(candidates.size())];
          picked = true;
        }
      }
      if (!picked) {
        // Degrees are snapshotted at round start: the sampler only learns
        // about this round's edges after the loop.
        target = sampler.sample(rng, [&](NodeId c) { return c == v || connected(v, c); });
      }
      add_edge(v, target);
      chosen.push_back(target);
      pivot = target;
    }
    for (NodeId t : chosen) sampler.add(t, 1);
    sampler.add(v, m);
  }

  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId w : adj[u]) {
      if (u < w) edges.push_back({u, w});
    }
  }
  return Graph::build(n, edges);
}

}  // namespace

Graph barabasi_albert(const GeneratorParams& params, RngStream& rng) {
  validate(params, false);
  GeneratorParams flat = params;
  flat.triad_probability = 0.0;
  return grow(flat, rng);
}

Graph barabasi_albert(const GeneratorParams& params) {
  RngStream rng(params.rng_seed);
  return barabasi_albert(params, rng);
}

Graph holme_kim(const GeneratorParams& params, RngStream& rng) {
  validate(params, true);
  return grow(params, rng);
}

Graph holme_kim(const GeneratorParams& params) {
  RngStream rng(params.rng_seed);
  return holme_kim(params, rng);
}

double mean_clustering(NodeId n, NodeId m, double triad_probability,
                       std::span<const std::uint64_t> sample_seeds) {
  if (sample_seeds.empty()) throw Error(ErrorCode::InvalidParams, "need at least one sample seed");
  double sum = 0.0;
  for (std::uint64_t seed : sample_seeds) {
    Graph g = holme_kim({.n = n, .m = m, .triad_probability = triad_probability, .rng_seed = seed});
    auto gcc = global_clustering_coefficient(g);
    if (!gcc) throw Error(ErrorCode::NoTriplets, "generated graph has no connected triples");
    sum += *gcc;
  }
  return sum / static_cast<double>(sample_seeds.size());
}

CalibrationResult calibrate_triad_probability(double target_gcc, NodeId n, NodeId m, double tol,
                                              std::span<const std::uint64_t> sample_seeds,
                                              int max_iterations) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be positive");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidParams, "max_iterations must be >= 1");

  CalibrationResult result;
  result.samples = static_cast<int>(sample_seeds.size());
  result.band_low = mean_clustering(n, m, 0.0, sample_seeds);
  result.band_high = mean_clustering(n, m, 1.0, sample_seeds);

  if (target_gcc < result.band_low - tol || target_gcc > result.band_high + tol) {
    throw Error(ErrorCode::UnreachableTarget,
                "target " + std::to_string(target_gcc) + " outside achievable band [" +
                    std::to_string(result.band_low) + ", " + std::to_string(result.band_high) + "]");
  }

  // Aim for half the tolerance so downstream re-measurement keeps slack.
  const double inner = tol / 2.0;
  auto finish = [&](double p, double achieved, int iterations) {
    result.triad_probability = p;
    result.achieved_mean_gcc = achieved;
    result.iterations = iterations;
    return result;
  };
  if (std::abs(result.band_low - target_gcc) <= inner) return finish(0.0, result.band_low, 0);
  if (std::abs(result.band_high - target_gcc) <= inner) return finish(1.0, result.band_high, 0);

  double lo = 0.0, hi = 1.0;
  double best_p = 0.0;
  double best_gcc = result.band_low;
  double best_err = std::abs(result.band_low - target_gcc);
  if (std::abs(result.band_high - target_gcc) < best_err) {
    best_p = 1.0;
    best_gcc = result.band_high;
    best_err = std::abs(result.band_high - target_gcc);
  }
  for (int it = 1; it <= max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double got = mean_clustering(n, m, mid, sample_seeds);
    const double err = std::abs(got - target_gcc);
    if (err < best_err) {
      best_p = mid;
      best_gcc = got;
      best_err = err;
    }
    if (err <= inner) return finish(mid, got, it);
    if (got < target_gcc) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (best_err <= tol) return finish(best_p, best_gcc, max_iterations);
  throw Error(ErrorCode::NoConvergence,
              "calibration stalled at mean clustering " + std::to_string(best_gcc) + " for target " +
                  std::to_string(target_gcc));
}

CalibrationResult calibrate_triad_probability(double target_gcc, NodeId n, NodeId m, double tol,
                                              std::uint64_t base_seed, int samples,
                                              int max_iterations) {
  if (samples < 1) throw Error(ErrorCode::InvalidParams, "samples must be >= 1");
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    seeds[static_cast<std::size_t>(j)] = split_seed(base_seed, 0, static_cast<std::uint64_t>(j));
  }
  return calibrate_triad_probability(target_gcc, n, m, tol, seeds, max_iterations);
}

}  // namespace epiflat
