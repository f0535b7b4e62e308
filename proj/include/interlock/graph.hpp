#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "interlock/model.hpp"

namespace interlock {

using NodeIndex = std::uint32_t;

// Immutable two-mode graph. Nodes of each kind are indexed 0..n-1 in
// ascending identifier order, so index order and identifier order agree.
// Neighbor lists are sorted by index.
class CorporateGraph {
 public:
  CorporateGraph() = default;
  // Validates the dataset (IntegrityError on violation).
  explicit CorporateGraph(const BipartiteDataset& dataset);

  std::size_t size(NodeKind kind) const { return records(kind).size(); }
  std::size_t node_count() const { return companies_.size() + directors_.size(); }
  std::size_t edge_count() const { return edges_; }

  const std::string& id(NodeKind kind, NodeIndex index) const { return records(kind)[index].id; }
  const std::string& name(NodeKind kind, NodeIndex index) const {
    return records(kind)[index].name;
  }
  std::optional<NodeIndex> find(NodeKind kind, const std::string& id) const;
  // Like find() but throws std::out_of_range for an unknown identifier.
  NodeIndex index_of(NodeKind kind, const std::string& id) const;

  // Opposite-kind neighbors of a node.
  std::span<const NodeIndex> neighbors(NodeKind kind, NodeIndex index) const {
    return adjacency(kind)[index];
  }
  std::size_t degree(NodeKind kind, NodeIndex index) const {
    return adjacency(kind)[index].size();
  }

 private:
  struct Node {
    std::string id;
    std::string name;
  };

  const std::vector<Node>& records(NodeKind kind) const {
    return kind == NodeKind::company ? companies_ : directors_;
  }
  const std::vector<std::vector<NodeIndex>>& adjacency(NodeKind kind) const {
    return kind == NodeKind::company ? company_adj_ : director_adj_;
  }

  std::vector<Node> companies_;
  std::vector<Node> directors_;
  std::map<std::string, NodeIndex, std::less<>> company_index_;
  std::map<std::string, NodeIndex, std::less<>> director_index_;
  std::vector<std::vector<NodeIndex>> company_adj_;
  std::vector<std::vector<NodeIndex>> director_adj_;
  std::size_t edges_ = 0;
};

CorporateGraph build_graph(const BipartiteDataset& dataset);

struct HistogramRow {
  std::size_t degree = 0;
  std::size_t count = 0;
  double fraction = 0;
  // Fraction of nodes with degree >= this row's degree.
  double cumulative_ge_fraction = 0;
};

struct DegreeHistogram {
  NodeKind kind = NodeKind::company;
  std::size_t total = 0;
  std::map<std::size_t, std::size_t> counts;  // degree -> node count

  std::size_t count(std::size_t degree) const;
  std::size_t count_at_least(std::size_t degree) const;
  // Both are count/total with a single division; 0 when the graph is empty.
  double fraction(std::size_t degree) const;
  double cumulative_ge_fraction(std::size_t degree) const;
  // One row per observed degree, ascending.
  std::vector<HistogramRow> rows() const;
};

DegreeHistogram degree_histogram(const CorporateGraph& graph, NodeKind kind);

struct StarNode {
  std::string id;
  std::size_t degree = 0;

  friend bool operator==(const StarNode&, const StarNode&) = default;
};

inline constexpr std::size_t kDefaultCompanyStarDegree = 10;
inline constexpr std::size_t kDefaultDirectorStarDegree = 5;

// Nodes of `kind` with degree >= min_degree, by degree descending then
// identifier ascending. Throws std::invalid_argument if min_degree < 1.
std::vector<StarNode> star_nodes(const CorporateGraph& graph, NodeKind kind,
                                 std::size_t min_degree);

// Cut vertices of the two-mode graph, sorted companies first then by id.
std::vector<NodeRef> articulation_report(const CorporateGraph& graph);

}  // namespace interlock
