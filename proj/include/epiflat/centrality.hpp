#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "epiflat/graph.hpp"

namespace epiflat {

enum class Measure {
  Degree,
  Closeness,
  Betweenness,
  Eigenvector,
  Katz,
  PageRank,
  ExpectedForce,
};

inline constexpr std::array<Measure, 7> kAllMeasures = {
    Measure::Degree,     Measure::Closeness, Measure::Betweenness,  Measure::Eigenvector,
    Measure::Katz,       Measure::PageRank,  Measure::ExpectedForce,
};

std::string_view measure_name(Measure m);   // "degree", "closeness", ...
std::string_view measure_label(Measure m);  // "Deg", "Clo", ... (table rows)

// Accepts either form, case-insensitively. nullopt when unrecognized.
std::optional<Measure> parse_measure(std::string_view text);

struct CentralityScores {
  Measure measure = Measure::Degree;
  std::vector<double> values;  // one score per node id
};

struct SolverSettings {
  double tolerance = 1e-10;
  int max_iterations = 10000;
  double katz_alpha_fraction = 0.85;  // attenuation = fraction / spectral radius
  double pagerank_damping = 0.85;
};

// Node degree as a double score.
CentralityScores degree_centrality(const Graph& g);

// Wasserman-Faust closeness: ((r-1) / sum of distances to reachable nodes) *
// ((r-1) / (n-1)) where r counts the node's component. Zero for nodes with no
// reachable peers, so disconnected graphs need no special casing.
CentralityScores closeness_centrality(const Graph& g);

// Shortest-path betweenness over unordered pairs, unnormalized.
CentralityScores betweenness_centrality(const Graph& g);

// Principal adjacency eigenvector, unit Euclidean norm, computed by power
// iteration from the uniform vector. Throws DEGENERATE on edgeless graphs
// and NO_CONVERGENCE when max_iterations is exhausted.
CentralityScores eigenvector_centrality(const Graph& g, const SolverSettings& settings = {});

// Katz scores x = alpha * A * x + 1 with alpha = katz_alpha_fraction divided
// by the spectral radius, solved by fixed-point iteration, unnormalized.
// Edgeless graphs score all ones.
CentralityScores katz_centrality(const Graph& g, const SolverSettings& settings = {});

// PageRank with uniform teleport and uniform redistribution of dangling mass;
// scores sum to one.
CentralityScores pagerank(const Graph& g, const SolverSettings& settings = {});

// Expected force: entropy of the normalized cluster degree over every ordered
// two-step transmission enumeration from the node. Zero when fewer than two
// steps are possible.
CentralityScores expected_force(const Graph& g);

CentralityScores compute_centrality(const Graph& g, Measure measure,
                                     const SolverSettings& settings = {});

// Largest adjacency eigenvalue (power iteration on the shifted operator).
double spectral_radius(const Graph& g, const SolverSettings& settings = {});

// Ids of the round(fraction * n) highest-scoring nodes, ties broken toward
// the lower id. Sorted by (score desc, id asc).
std::vector<NodeId> top_fraction(const CentralityScores& scores, double fraction);

namespace serial {

// Single-threaded reference implementations of the parallel kernels, kept for
// validation and benchmarking.
CentralityScores closeness_centrality(const Graph& g);
CentralityScores betweenness_centrality(const Graph& g);
CentralityScores expected_force(const Graph& g);

}  // namespace serial

}  // namespace epiflat
