#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace epiflat {

using NodeId = std::uint32_t;

// Distance value for nodes a traversal cannot reach.
inline constexpr std::int32_t kUnreachable = -1;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected simple graph stored in CSR form. Instances are immutable after
/// construction and neighbor lists are sorted ascending, so every traversal
/// order is deterministic.
class Graph {
 public:
  Graph() = default;

  // Validates endpoints, rejects self-loops, collapses duplicate edges
  // (either orientation).
  static Graph build(NodeId node_count, std::span<const Edge> edges);

  NodeId node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::size_t degree(NodeId i) const;
  std::span<const NodeId> neighbors(NodeId i) const;
  bool has_edge(NodeId u, NodeId v) const;

  // Edges as (u < v) pairs in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_node(NodeId i) const;

  NodeId node_count_ = 0;
  std::vector<std::size_t> offsets_ = {0};
  std::vector<NodeId> adjacency_;
};

struct DistanceMap {
  NodeId source = 0;
  std::vector<std::int32_t> dist;  // hops from source, kUnreachable if cut off
};

DistanceMap bfs_distances(const Graph& g, NodeId source);

// Copy of g with every edge incident to a target removed. Node count and ids
// are preserved; targets become isolated vertices.
Graph isolate_nodes(const Graph& g, std::span<const NodeId> targets);

// Global clustering: 3 * triangles / connected triples. Returns nullopt when
// the graph has no connected triples (every degree < 2); callers must treat
// that as undefined, not zero.
std::optional<double> global_clustering_coefficient(const Graph& g);

}  // namespace epiflat
