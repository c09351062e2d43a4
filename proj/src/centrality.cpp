#include "epiflat/centrality.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>

#include "epiflat/error.hpp"
#include "kernel_detail.hpp"

namespace epiflat {

std::string_view measure_name(Measure m) {
  switch (m) {
    case Measure::Degree: return "degree";
    case Measure::Closeness: return "closeness";
    case Measure::Betweenness: return "betweenness";
    case Measure::Eigenvector: return "eigenvector";
    case Measure::Katz: return "katz";
    case Measure::PageRank: return "pagerank";
    case Measure::ExpectedForce: return "expected_force";
  }
  return "unknown";
}

std::string_view measure_label(Measure m) {
  switch (m) {
    case Measure::Degree: return "Deg";
    case Measure::Closeness: return "Clo";
    case Measure::Betweenness: return "Betw";
    case Measure::Eigenvector: return "Eig";
    case Measure::Katz: return "Katz";
    case Measure::PageRank: return "Page";
    case Measure::ExpectedForce: return "Exf";
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (Measure m : kAllMeasures) {
    std::string label(measure_label(m));
    std::transform(label.begin(), label.end(), label.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == measure_name(m) || lowered == label) return m;
  }
  return std::nullopt;
}

CentralityScores degree_centrality(const Graph& g) {
  CentralityScores out{Measure::Degree, std::vector<double>(g.node_count())};
  for (NodeId i = 0; i < g.node_count(); ++i) out.values[i] = static_cast<double>(g.degree(i));
  return out;
}

CentralityScores closeness_centrality(const Graph& g) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::Closeness, std::vector<double>(n, 0.0)};
#pragma omp parallel
  {
    std::vector<std::int32_t> dist(n);
    std::vector<NodeId> queue;
    queue.reserve(n);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      detail::bfs_scratch(g, static_cast<NodeId>(i), dist, queue);
      std::int64_t reachable = 0;
      std::int64_t dist_sum = 0;
      for (NodeId v = 0; v < n; ++v) {
        if (dist[v] != kUnreachable) {
          ++reachable;
          dist_sum += dist[v];
        }
      }
      out.values[static_cast<std::size_t>(i)] = detail::closeness_value(n, reachable, dist_sum);
    }
  }
  return out;
}

CentralityScores betweenness_centrality(const Graph& g) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::Betweenness, std::vector<double>(n, 0.0)};
  if (n == 0) return out;

  // Fixed-size source chunks merged in chunk order: the result is bitwise
  // identical for any thread count.
  constexpr NodeId kChunk = 64;
  const NodeId chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    std::vector<double> acc(n, 0.0);
    const NodeId first = static_cast<NodeId>(c) * kChunk;
    const NodeId last = std::min<NodeId>(n, first + kChunk);
    detail::brandes_accumulate(g, first, last, acc);
    partial[static_cast<std::size_t>(c)] = std::move(acc);
  }
  for (const auto& acc : partial) {
    for (NodeId i = 0; i < n; ++i) out.values[i] += acc[i];
  }
  // Each unordered pair was accumulated from both endpoints.
  for (NodeId i = 0; i < n; ++i) out.values[i] /= 2.0;
  return out;
}

namespace {

// One multiplication by (A + I). The +I shift keeps power iteration from
// oscillating on bipartite graphs without moving the principal eigenvector.
void shifted_multiply(const Graph& g, const std::vector<double>& x, std::vector<double>& y) {
  const NodeId n = g.node_count();
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    double sum = x[static_cast<std::size_t>(i)];
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) sum += x[j];
    y[static_cast<std::size_t>(i)] = sum;
  }
}

double l2_norm(const std::vector<double>& x) {
  double sum = 0.0;
  for (double v : x) sum += v * v;
  return std::sqrt(sum);
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Power iteration on A + I from the uniform vector; returns the unit
// eigenvector. Throws NO_CONVERGENCE when the budget runs out.
std::vector<double> principal_vector(const Graph& g, const SolverSettings& settings) {
  const NodeId n = g.node_count();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  for (int it = 0; it < settings.max_iterations; ++it) {
    shifted_multiply(g, x, y);
    const double norm = l2_norm(y);
    for (double& v : y) v /= norm;
    if (max_abs_diff(x, y) <= settings.tolerance) return y;
    std::swap(x, y);
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration did not converge in " + std::to_string(settings.max_iterations) +
                  " iterations");
}

}  // namespace

CentralityScores eigenvector_centrality(const Graph& g, const SolverSettings& settings) {
  if (g.node_count() == 0 || g.edge_count() == 0) {
    throw Error(ErrorCode::Degenerate, "eigenvector centrality needs at least one edge");
  }
  return {Measure::Eigenvector, principal_vector(g, settings)};
}

double spectral_radius(const Graph& g, const SolverSettings& settings) {
  if (g.node_count() == 0) return 0.0;
  if (g.edge_count() == 0) return 0.0;
  const std::vector<double> x = principal_vector(g, settings);
  // Rayleigh quotient of the unit eigenvector under A alone.
  double lambda = 0.0;
  for (NodeId i = 0; i < g.node_count(); ++i) {
    double row = 0.0;
    for (NodeId j : g.neighbors(i)) row += x[j];
    lambda += x[i] * row;
  }
  return lambda;
}

CentralityScores katz_centrality(const Graph& g, const SolverSettings& settings) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::Katz, std::vector<double>(n, 1.0)};
  if (n == 0 || g.edge_count() == 0) return out;

  const double alpha = settings.katz_alpha_fraction / spectral_radius(g, settings);
  std::vector<double> x(n, 1.0);
  std::vector<double> y(n);
  for (int it = 0; it < settings.max_iterations; ++it) {
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      double sum = 0.0;
      for (NodeId j : g.neighbors(static_cast<NodeId>(i))) sum += x[j];
      y[static_cast<std::size_t>(i)] = alpha * sum + 1.0;
    }
    if (max_abs_diff(x, y) <= settings.tolerance) {
      out.values = y;
      return out;
    }
    std::swap(x, y);
  }
  throw Error(ErrorCode::NoConvergence, "katz iteration did not converge");
}

CentralityScores pagerank(const Graph& g, const SolverSettings& settings) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::PageRank, std::vector<double>(n)};
  if (n == 0) return out;

  const double d = settings.pagerank_damping;
  const double teleport = (1.0 - d) / static_cast<double>(n);
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n);
  for (int it = 0; it < settings.max_iterations; ++it) {
    double dangling = 0.0;
    for (NodeId i = 0; i < n; ++i) {
      if (g.degree(i) == 0) dangling += v[i];
    }
    const double dangling_share = d * dangling / static_cast<double>(n);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
      double in = 0.0;
      for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
        in += v[j] / static_cast<double>(g.degree(j));
      }
      next[static_cast<std::size_t>(i)] = teleport + dangling_share + d * in;
    }
    double l1 = 0.0;
    for (NodeId i = 0; i < n; ++i) l1 += std::abs(next[i] - v[i]);
    std::swap(v, next);
    if (l1 <= settings.tolerance) {
      out.values = v;
      return out;
    }
  }
  throw Error(ErrorCode::NoConvergence, "pagerank iteration did not converge");
}

CentralityScores expected_force(const Graph& g) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::ExpectedForce, std::vector<double>(n, 0.0)};
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    out.values[static_cast<std::size_t>(i)] = detail::expected_force_node(g, static_cast<NodeId>(i));
  }
  return out;
}

CentralityScores compute_centrality(const Graph& g, Measure measure, const SolverSettings& settings) {
  switch (measure) {
    case Measure::Degree: return degree_centrality(g);
    case Measure::Closeness: return closeness_centrality(g);
    case Measure::Betweenness: return betweenness_centrality(g);
    case Measure::Eigenvector: return eigenvector_centrality(g, settings);
    case Measure::Katz: return katz_centrality(g, settings);
    case Measure::PageRank: return pagerank(g, settings);
    case Measure::ExpectedForce: return expected_force(g);
  }
  throw Error(ErrorCode::InvalidParams, "unknown centrality measure");
}

std::vector<NodeId> top_fraction(const CentralityScores& scores, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidParams, "fraction must lie in [0, 1]");
  }
  const std::size_t n = scores.values.size();
  std::size_t k = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
  k = std::min(k, n);

  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  std::sort(ids.begin(), ids.end(), [&](NodeId a, NodeId b) {
    if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
    return a < b;
  });
  ids.resize(k);
  return ids;
}

}  // namespace epiflat
