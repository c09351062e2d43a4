#pragma once

// Per-node kernel bodies shared by the OpenMP and serial entry points. Keeping
// one definition per kernel guarantees that parallel and serial runs disagree
// only in summation grouping, never in per-slot arithmetic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "epiflat/graph.hpp"

namespace epiflat::detail {

inline double closeness_value(NodeId n, std::int64_t reachable, std::int64_t dist_sum) {
  if (reachable <= 1) return 0.0;
  const double r1 = static_cast<double>(reachable - 1);
  return (r1 / static_cast<double>(dist_sum)) * (r1 / static_cast<double>(n - 1));
}

// BFS from `source` into dist/queue scratch (dist must be n-sized; both are
// overwritten). Returns number of reached nodes including the source.
inline std::size_t bfs_scratch(const Graph& g, NodeId source, std::vector<std::int32_t>& dist,
                               std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const std::int32_t du = dist[u];
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = du + 1;
        queue.push_back(v);
      }
    }
  }
  return queue.size();
}

// Brandes dependency accumulation for sources in [first, last), added into
// acc (size n). Equal-length shortest paths only, so a BFS order suffices.
inline void brandes_accumulate(const Graph& g, NodeId first, NodeId last,
                               std::vector<double>& acc) {
  const NodeId n = g.node_count();
  std::vector<std::int32_t> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<NodeId> order;
  order.reserve(n);
  std::vector<std::vector<NodeId>> preds(n);
  for (NodeId s = first; s < last; ++s) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : preds) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const NodeId u = order[head];
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[u] + 1) {
          sigma[w] += sigma[u];
          preds[w].push_back(u);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const NodeId w = *it;
      for (NodeId p : preds[w]) delta[p] += (sigma[p] / sigma[w]) * (1.0 + delta[w]);
      if (w != s) acc[w] += delta[w];
    }
  }
}

// Expected force of node i: entropy of normalized cluster degrees over every
// ordered two-transmission enumeration (j, k). j runs over N(i); k runs over
// the distinct susceptible neighbors of the infected cluster {i, j}. The
// cluster degree discounts internal edges: i-j always, plus i-k and j-k when
// present.
inline double expected_force_node(const Graph& g, NodeId i) {
  const auto ni = g.neighbors(i);
  if (ni.empty()) return 0.0;
  const double deg_i = static_cast<double>(ni.size());

  std::vector<double> cluster_degrees;
  for (NodeId j : ni) {
    const auto nj = g.neighbors(j);
    const double deg_j = static_cast<double>(nj.size());
    auto push = [&](NodeId k, bool k_adj_i) {
      const bool k_adj_j = std::binary_search(nj.begin(), nj.end(), k);
      const double internal = 1.0 + (k_adj_i ? 1.0 : 0.0) + (k_adj_j ? 1.0 : 0.0);
      const double deg_k = static_cast<double>(g.neighbors(k).size());
      cluster_degrees.push_back(deg_i + deg_j + deg_k - 2.0 * internal);
    };
    for (NodeId k : ni) {
      if (k != j) push(k, true);
    }
    for (NodeId k : nj) {
      if (k != i && !std::binary_search(ni.begin(), ni.end(), k)) push(k, false);
    }
  }
  double total = 0.0;
  for (double d : cluster_degrees) total += d;
  if (cluster_degrees.empty() || total <= 0.0) return 0.0;
  double entropy = 0.0;
  for (double d : cluster_degrees) {
    if (d > 0.0) {
      const double frac = d / total;
      entropy -= frac * std::log(frac);
    }
  }
  return entropy;
}

}  // namespace epiflat::detail
