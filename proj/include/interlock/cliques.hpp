#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "interlock/graph.hpp"
#include "interlock/projection.hpp"

namespace interlock {

struct EgoNetwork {
  std::string base;
  std::size_t radius = 0;
  // Induced on every node within `radius` projection hops of base.
  ProjectionGraph subgraph;
};

// Throws std::out_of_range for an unknown base and std::invalid_argument
// for radius < 1.
EgoNetwork ego_network(const ProjectionGraph& projection, const std::string& base,
                       std::size_t radius);

struct MaximalClique {
  std::vector<std::string> members;  // ascending
  // Opposite-mode entities adjacent to every member.
  std::vector<std::string> shared_intersection;
  // Opposite-mode entities shared by at least one member pair.
  std::vector<std::string> shared_union;

  std::size_t size() const { return members.size(); }
};

inline constexpr std::size_t kDefaultMinCliqueSize = 3;

enum class CliqueStrategy {
  automatic,   // degeneracy ordering above kDegeneracyThreshold nodes
  pivot,       // single Bron-Kerbosch call with Tomita pivoting
  degeneracy,  // outer loop in degeneracy order, pivoting inside
};
inline constexpr std::size_t kDegeneracyThreshold = 64;

// Every maximal clique with at least min_size members, sorted by size
// descending then members ascending. Throws std::invalid_argument if
// min_size < 2.
std::vector<MaximalClique> maximal_cliques(const ProjectionGraph& projection,
                                           std::size_t min_size = kDefaultMinCliqueSize,
                                           CliqueStrategy strategy = CliqueStrategy::automatic);

// The maximal cliques of `projection` that contain `base`, same ordering.
std::vector<MaximalClique> maximal_cliques_containing(const ProjectionGraph& projection,
                                                      const std::string& base,
                                                      std::size_t min_size = kDefaultMinCliqueSize);

struct CliqueSummary {
  std::size_t size = 0;
  std::size_t shared = 0;  // |shared_intersection|
  std::vector<std::string> members;

  friend bool operator==(const CliqueSummary&, const CliqueSummary&) = default;
};

// One row of the clique report for a base node. Column letters follow the
// director layout (A-F); the company layout (P-U) has the same order.
struct CliqueStats {
  NodeKind mode = NodeKind::director;
  std::string base;
  std::size_t radius = 0;
  std::size_t min_size = 0;
  // A: same-mode nodes within radius (base included) and the opposite-mode
  // entities adjacent to any of them.
  std::size_t neighborhood_same = 0;
  std::size_t neighborhood_opposite = 0;
  // B: cliques containing base, and their mean size.
  std::size_t clique_count = 0;
  double mean_size = 0;
  // C: largest (ties: more shared, then members).
  std::optional<CliqueSummary> largest;
  // D: smallest (ties: more shared, then members).
  std::optional<CliqueSummary> smallest;
  // E: most shared entities (ties: fewer members, then members).
  std::optional<CliqueSummary> most_shared;
  // F: fewest shared entities (ties: more members, then members).
  std::optional<CliqueSummary> least_shared;
  std::vector<MaximalClique> cliques;
};

// Statistics over the maximal cliques of the radius-`radius` ego network
// that contain base. `projection` must be project(graph, mode).
CliqueStats clique_stats(const CorporateGraph& graph, const ProjectionGraph& projection,
                         const std::string& base, std::size_t radius,
                         std::size_t min_size = kDefaultMinCliqueSize);

}  // namespace interlock
