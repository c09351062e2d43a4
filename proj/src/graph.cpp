#include "epiflat/graph.hpp"

#include <algorithm>
#include <string>

#include "epiflat/error.hpp"

namespace epiflat {

void Graph::check_node(NodeId i) const {
  if (i >= node_count_) {
    throw Error(ErrorCode::OutOfRange,
                "node " + std::to_string(i) + " not in [0, " + std::to_string(node_count_) + ")");
  }
}

Graph Graph::build(NodeId node_count, std::span<const Edge> edges) {
  std::vector<Edge> normalized;
  normalized.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw Error(ErrorCode::OutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") exceeds node count " + std::to_string(node_count));
    }
    if (e.u == e.v) {
      throw Error(ErrorCode::SelfLoop, "self loop at node " + std::to_string(e.u));
    }
    normalized.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(normalized.begin(), normalized.end(),
            [](const Edge& a, const Edge& b) { return a.u < b.u || (a.u == b.u && a.v < b.v); });
  normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());

  Graph g;
  g.node_count_ = node_count;
  std::vector<std::size_t> deg(node_count, 0);
  for (const Edge& e : normalized) {
    ++deg[e.u];
    ++deg[e.v];
  }
  g.offsets_.assign(node_count + 1, 0);
  for (NodeId i = 0; i < node_count; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adjacency_.resize(g.offsets_[node_count]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : normalized) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  for (NodeId i = 0; i < node_count; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  return g;
}

std::size_t Graph::degree(NodeId i) const {
  check_node(i);
  return offsets_[i + 1] - offsets_[i];
}

std::span<const NodeId> Graph::neighbors(NodeId i) const {
  check_node(i);
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count_; ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

DistanceMap bfs_distances(const Graph& g, NodeId source) {
  const NodeId n = g.node_count();
  if (source >= n) {
    throw Error(ErrorCode::OutOfRange, "bfs source " + std::to_string(source) + " out of range");
  }
  DistanceMap map;
  map.source = source;
  map.dist.assign(n, kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(n);
  queue.push_back(source);
  map.dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    const std::int32_t du = map.dist[u];
    for (NodeId v : g.neighbors(u)) {
      if (map.dist[v] == kUnreachable) {
        map.dist[v] = du + 1;
        queue.push_back(v);
      }
    }
  }
  return map;
}

Graph isolate_nodes(const Graph& g, std::span<const NodeId> targets) {
  const NodeId n = g.node_count();
  std::vector<char> isolated(n, 0);
  for (NodeId t : targets) {
    if (t >= n) {
      throw Error(ErrorCode::OutOfRange, "isolation target " + std::to_string(t) + " out of range");
    }
    isolated[t] = 1;
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    if (!isolated[e.u] && !isolated[e.v]) kept.push_back(e);
  }
  return Graph::build(n, kept);
}

std::optional<double> global_clustering_coefficient(const Graph& g) {
  const NodeId n = g.node_count();
  std::int64_t closed = 0;  // adjacent neighbor pairs, one per triangle corner
  std::int64_t triples = 0;
#pragma omp parallel for reduction(+ : closed, triples) schedule(dynamic, 64)
  for (NodeId i = 0; i < n; ++i) {
    auto nb = g.neighbors(i);
    const std::int64_t d = static_cast<std::int64_t>(nb.size());
    triples += d * (d - 1) / 2;
    for (std::size_t a = 0; a < nb.size(); ++a) {
      auto rest = g.neighbors(nb[a]);
      for (std::size_t b = a + 1; b < nb.size(); ++b) {
        // pair (nb[a], nb[b]) centered at i closes iff nb[a] ~ nb[b]
        if (std::binary_search(rest.begin(), rest.end(), nb[b])) ++closed;
      }
    }
  }
  if (triples == 0) return std::nullopt;
  // closed counts each triangle once per center, i.e. 3 * triangles total
  return static_cast<double>(closed) / static_cast<double>(triples);
}

}  // namespace epiflat
