#include "epiflat/centrality.hpp"
#include "kernel_detail.hpp"

namespace epiflat::serial {

CentralityScores closeness_centrality(const Graph& g) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::Closeness, std::vector<double>(n, 0.0)};
  std::vector<std::int32_t> dist(n);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId i = 0; i < n; ++i) {
    detail::bfs_scratch(g, i, dist, queue);
    std::int64_t reachable = 0;
    std::int64_t dist_sum = 0;
    for (NodeId v = 0; v < n; ++v) {
      if (dist[v] != kUnreachable) {
        ++reachable;
        dist_sum += dist[v];
      }
    }
    out.values[i] = detail::closeness_value(n, reachable, dist_sum);
  }
  return out;
}

CentralityScores betweenness_centrality(const Graph& g) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::Betweenness, std::vector<double>(n, 0.0)};
  if (n == 0) return out;
  detail::brandes_accumulate(g, 0, n, out.values);
  for (NodeId i = 0; i < n; ++i) out.values[i] /= 2.0;
  return out;
}

CentralityScores expected_force(const Graph& g) {
  const NodeId n = g.node_count();
  CentralityScores out{Measure::ExpectedForce, std::vector<double>(n, 0.0)};
  for (NodeId i = 0; i < n; ++i) out.values[i] = detail::expected_force_node(g, i);
  return out;
}

}  // namespace epiflat::serial
