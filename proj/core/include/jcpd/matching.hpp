#pragma once

#include <utility>
#include <vector>

#include "jcpd/errors.hpp"
#include "jcpd/nodes.hpp"

namespace jcpd {

struct WeightedEdge {
  NodeId a = 0;
  NodeId b = 0;
  double weight = 0.0;
};

// Simple undirected weighted graph. Nodes may exist without edges (isolated
// nodes never affect matching results). Self loops and duplicate unordered
// pairs are rejected; weights must be finite.
class WeightedGraph {
 public:
  void add_node(NodeId id);
  void add_edge(NodeId a, NodeId b, double weight);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  bool has_node(NodeId id) const;

 private:
  std::vector<NodeId> nodes_;  // sorted, unique
  std::vector<WeightedEdge> edges_;
};

struct Matching {
  // Each pair normalized (first < second), list sorted ascending.
  std::vector<std::pair<NodeId, NodeId>> pairs;
  double total_weight = 0.0;

  bool contains(NodeId v) const {
    for (const auto& p : pairs)
      if (p.first == v || p.second == v) return true;
    return false;
  }
};

// Exact maximum weight matching on a general graph (blossom algorithm,
// O(V^3)). Edges with weight <= 0 are dropped up front, so they never appear
// in a result. Deterministic for identical input graphs.
Matching max_weight_matching(const WeightedGraph& g);

// Exhaustive reference matcher for cross-checking. Ties between equal-weight
// matchings break toward the lexicographically smallest sorted pair list.
// Throws TooLargeError above 16 nodes.
Matching brute_force_matching(const WeightedGraph& g);

}  // namespace jcpd
