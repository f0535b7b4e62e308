#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "interlock/graph.hpp"

namespace interlock {

struct ProjectionEdge {
  NodeIndex u = 0;  // u < v
  NodeIndex v = 0;
  // Opposite-mode entities adjacent to both endpoints, ascending.
  std::vector<std::string> shared;

  std::size_t weight() const { return shared.size(); }
};

// Weighted one-mode graph. Node identifiers are held in ascending order;
// edges are sorted by (u, v) and every edge has weight >= 1.
class ProjectionGraph {
 public:
  ProjectionGraph() = default;
  // `ids` need not be sorted; edges refer to positions in `ids` and are
  // remapped. Throws std::invalid_argument on duplicate ids, self loops,
  // duplicate edges, out-of-range endpoints or an empty shared list.
  ProjectionGraph(NodeKind mode, std::vector<std::string> ids, std::vector<ProjectionEdge> edges);

  NodeKind mode() const { return mode_; }
  std::size_t size() const { return ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& id(NodeIndex i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<NodeIndex> find(const std::string& id) const;

  std::span<const NodeIndex> neighbors(NodeIndex i) const { return adj_[i]; }
  bool adjacent(NodeIndex a, NodeIndex b) const;
  const ProjectionEdge* edge(NodeIndex a, NodeIndex b) const;
  const std::vector<ProjectionEdge>& edges() const { return edges_; }

  // Induced subgraph on `nodes` (any order, duplicates ignored).
  ProjectionGraph induced(std::span<const NodeIndex> nodes) const;

 private:
  static std::uint64_t key(NodeIndex a, NodeIndex b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  NodeKind mode_ = NodeKind::company;
  std::vector<std::string> ids_;
  std::vector<ProjectionEdge> edges_;
  std::vector<std::vector<NodeIndex>> adj_;
  std::unordered_map<std::uint64_t, std::size_t> edge_index_;
};

// One-mode projection: an edge joins two `mode` nodes sharing at least one
// opposite-mode neighbor. Isolated nodes are kept.
ProjectionGraph project(const CorporateGraph& graph, NodeKind mode);

struct IndirectConnection {
  std::string u;
  std::string v;
  // Opposite-mode entities on a shortest two-mode path (hops / 2).
  std::size_t connection_degree = 0;
  // Alternating node sequences from u to v, lexicographic.
  std::vector<std::vector<std::string>> paths;
  std::size_t path_count = 0;
  // More paths existed than max_paths_per_pair.
  bool truncated = false;
};

struct IndirectOptions {
  // Upper bound on two-mode hops; even and >= 4.
  std::size_t max_path_len = 6;
  std::size_t max_paths_per_pair = 1000;
  // When set, only pairs with one endpoint in this list are reported and
  // each pair is oriented from its source. Otherwise every pair u < v.
  std::optional<std::vector<std::string>> sources;
};

// Same-mode pairs with no direct projection edge but a two-mode path of at
// most max_path_len hops, with all simple paths within that bound.
// Throws std::invalid_argument on bad options or an unknown source.
std::vector<IndirectConnection> indirect_connections(const CorporateGraph& graph, NodeKind mode,
                                                     const IndirectOptions& options = {});

// Strongest first: lower connection degree, then more paths, then (u, v).
std::vector<IndirectConnection> connection_strength_order(
    std::vector<IndirectConnection> connections);

}  // namespace interlock
