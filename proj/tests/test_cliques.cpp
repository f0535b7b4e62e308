#include <gtest/gtest.h>

#include <cstdio>

#include "interlock/cliques.hpp"
#include "oracles.hpp"

using namespace interlock;

namespace {

std::string vertex(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "v%02zu", i);
  return buf;
}

ProjectionGraph from_matrix(const oracle::Matrix& adj) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < adj.size(); ++i) ids.push_back(vertex(i));
  std::vector<ProjectionEdge> edges;
  for (NodeIndex i = 0; i < adj.size(); ++i) {
    for (NodeIndex j = i + 1; j < adj.size(); ++j) {
      if (adj[i][j]) edges.push_back({i, j, {"x" + std::to_string(i), "y"}});
    }
  }
  return ProjectionGraph(NodeKind::director, ids, edges);
}

std::set<std::vector<std::size_t>> as_index_sets(const std::vector<MaximalClique>& cliques) {
  std::set<std::vector<std::size_t>> out;
  for (const auto& c : cliques) {
    std::vector<std::size_t> members;
    for (const auto& m : c.members) members.push_back(std::stoul(m.substr(1)));
    out.insert(members);
  }
  return out;
}

std::vector<std::vector<std::string>> members_of(const std::vector<MaximalClique>& cliques) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cliques) out.push_back(c.members);
  return out;
}

}  // namespace

TEST(Cliques, FixtureCompanies) {
  const auto p = project(CorporateGraph(oracle::fixture_dataset()), NodeKind::company);
  const auto cliques = maximal_cliques(p);
  ASSERT_EQ(cliques.size(), 1u);
  EXPECT_EQ(cliques[0].members, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(cliques[0].shared_intersection, (std::vector<std::string>{"1"}));
}

TEST(Cliques, FixtureDirectors) {
  const auto p = project(CorporateGraph(oracle::fixture_dataset()), NodeKind::director);
  const auto cliques = maximal_cliques(p);
  EXPECT_EQ(members_of(cliques), (std::vector<std::vector<std::string>>{{"1", "2", "3", "4", "5"},
                                                                        {"4", "5", "6"}}));
  EXPECT_EQ(cliques[0].shared_intersection, (std::vector<std::string>{"B"}));
  // Entities shared by at least one pair of members.
  EXPECT_EQ(cliques[0].shared_union, (std::vector<std::string>{"A", "B", "E"}));
  EXPECT_EQ(cliques[1].shared_intersection, (std::vector<std::string>{"E"}));

  // Size-2 cliques are available on request: none here, every edge is in a triangle.
  EXPECT_EQ(maximal_cliques(p, 2).size(), 2u);
  EXPECT_THROW(maximal_cliques(p, 1), std::invalid_argument);
}

TEST(Cliques, StrategiesAgreeWithBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> n(0, 15);
    const double p = std::array{0.2, 0.5, 0.8}[trial % 3];
    const auto adj = oracle::random_graph(n(rng), p, rng);
    const auto g = from_matrix(adj);
    for (std::size_t min_size : {2u, 3u}) {
      const auto truth = oracle::brute_force_maximal_cliques(adj, min_size);
      for (auto strategy : {CliqueStrategy::automatic, CliqueStrategy::pivot, CliqueStrategy::degeneracy}) {
        const auto found = maximal_cliques(g, min_size, strategy);
        EXPECT_EQ(as_index_sets(found), truth) << "trial " << trial;
        EXPECT_EQ(found.size(), truth.size());
        for (std::size_t i = 1; i < found.size(); ++i) {
          const auto& a = found[i - 1];
          const auto& b = found[i];
          EXPECT_TRUE(a.size() > b.size() || (a.size() == b.size() && a.members < b.members));
        }
      }
    }
  }
}

TEST(Cliques, DegeneracyPathOnLargerGraph) {
  std::mt19937_64 rng(21);
  // Two planted 6-cliques in a sparse 90-node graph.
  oracle::Matrix adj = oracle::random_graph(90, 0.03, rng);
  for (std::size_t base : {10u, 50u}) {
    for (std::size_t i = base; i < base + 6; ++i) {
      for (std::size_t j = i + 1; j < base + 6; ++j) adj[i][j] = adj[j][i] = true;
    }
  }
  const auto g = from_matrix(adj);
  const auto automatic = maximal_cliques(g, 3);
  const auto pivot = maximal_cliques(g, 3, CliqueStrategy::pivot);
  EXPECT_EQ(members_of(automatic), members_of(pivot));
  EXPECT_GE(automatic.front().size(), 6u);
}

TEST(Cliques, Containing) {
  const auto p = project(CorporateGraph(oracle::fixture_dataset()), NodeKind::director);
  EXPECT_EQ(members_of(maximal_cliques_containing(p, "4")),
            (std::vector<std::vector<std::string>>{{"1", "2", "3", "4", "5"}, {"4", "5", "6"}}));
  EXPECT_EQ(members_of(maximal_cliques_containing(p, "6")),
            (std::vector<std::vector<std::string>>{{"4", "5", "6"}}));
  EXPECT_THROW(maximal_cliques_containing(p, "99"), std::out_of_range);
}

TEST(Ego, FixtureRadii) {
  const auto p = project(CorporateGraph(oracle::fixture_dataset()), NodeKind::director);
  EXPECT_EQ(ego_network(p, "6", 1).subgraph.ids(), (std::vector<std::string>{"4", "5", "6"}));
  EXPECT_EQ(ego_network(p, "6", 2).subgraph.size(), 6u);
  EXPECT_THROW(ego_network(p, "6", 0), std::invalid_argument);
  EXPECT_THROW(ego_network(p, "nobody", 1), std::out_of_range);
}

TEST(CliqueStats, BaseDirectorOne) {
  const CorporateGraph g(oracle::fixture_dataset());
  const auto p = project(g, NodeKind::director);
  const auto stats = clique_stats(g, p, "1", 3, 2);
  EXPECT_EQ(stats.clique_count, 1u);
  EXPECT_DOUBLE_EQ(stats.mean_size, 5.0);
  ASSERT_TRUE(stats.largest);
  EXPECT_EQ(stats.largest->size, 5u);
  EXPECT_EQ(stats.largest->shared, 1u);
  EXPECT_EQ(stats.cliques[0].shared_intersection, (std::vector<std::string>{"B"}));
  EXPECT_EQ(stats.smallest, stats.largest);
  EXPECT_EQ(stats.most_shared, stats.largest);
  EXPECT_EQ(stats.least_shared, stats.largest);
  EXPECT_EQ(stats.neighborhood_same, 6u);
  EXPECT_EQ(stats.neighborhood_opposite, 5u);
}

TEST(CliqueStats, BaseDirectorSix) {
  const CorporateGraph g(oracle::fixture_dataset());
  const auto p = project(g, NodeKind::director);
  const auto stats = clique_stats(g, p, "6", 3, 2);
  EXPECT_EQ(stats.clique_count, 1u);
  EXPECT_EQ(stats.cliques[0].members, (std::vector<std::string>{"4", "5", "6"}));
  EXPECT_EQ(stats.cliques[0].shared_intersection, (std::vector<std::string>{"E"}));
  EXPECT_EQ(stats.largest->shared, 1u);

  // Radius 1: 6 and its neighbours 4, 5, touching companies B and E.
  const auto near = clique_stats(g, p, "6", 1, 2);
  EXPECT_EQ(near.neighborhood_same, 3u);
  EXPECT_EQ(near.neighborhood_opposite, 2u);
}

TEST(CliqueStats, CompanyBase) {
  const CorporateGraph g(oracle::fixture_dataset());
  const auto p = project(g, NodeKind::company);
  const auto stats = clique_stats(g, p, "B", 3, 2);
  // {A,B,C} (shares 1), {B,D} (shares 3), {B,E} (shares 4,5).
  EXPECT_EQ(stats.clique_count, 3u);
  EXPECT_NEAR(stats.mean_size, 7.0 / 3.0, 1e-12);
  EXPECT_EQ(stats.largest, (CliqueSummary{3, 1, {"A", "B", "C"}}));
  EXPECT_EQ(stats.smallest, (CliqueSummary{2, 2, {"B", "E"}}));
  EXPECT_EQ(stats.most_shared, (CliqueSummary{2, 2, {"B", "E"}}));
  EXPECT_EQ(stats.least_shared, (CliqueSummary{3, 1, {"A", "B", "C"}}));
}

TEST(CliqueStats, IsolatedBase) {
  auto d = oracle::fixture_dataset();
  d.companies.push_back({"F", "Company F", ""});
  d.directors.push_back({"7", "Director Seven", ""});
  d.affiliations.push_back({"F", "7"});
  const CorporateGraph g(d);
  const auto stats = clique_stats(g, project(g, NodeKind::director), "7", 3, 3);
  EXPECT_EQ(stats.clique_count, 0u);
  EXPECT_DOUBLE_EQ(stats.mean_size, 0.0);
  EXPECT_FALSE(stats.largest);
  EXPECT_FALSE(stats.least_shared);
  EXPECT_EQ(stats.neighborhood_same, 1u);
  EXPECT_EQ(stats.neighborhood_opposite, 1u);
}

TEST(CliqueStats, RadiusSubsetLaw) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto d = oracle::random_dataset(14, 18, 0.15, rng);
    const CorporateGraph g(d);
    const auto p = project(g, NodeKind::director);
    for (const auto& base : p.ids()) {
      for (std::size_t r = 1; r <= 2; ++r) {
        const auto inner = clique_stats(g, p, base, r, 2);
        const auto outer = clique_stats(g, p, base, r + 1, 2);
        for (const auto& c : inner.cliques) {
          EXPECT_TRUE(std::any_of(outer.cliques.begin(), outer.cliques.end(), [&](const auto& o) {
            return std::includes(o.members.begin(), o.members.end(), c.members.begin(),
                                 c.members.end());
          }));
          EXPECT_TRUE(std::binary_search(c.members.begin(), c.members.end(), base));
          EXPECT_TRUE(std::includes(c.shared_union.begin(), c.shared_union.end(),
                                    c.shared_intersection.begin(), c.shared_intersection.end()));
          for (std::size_t i = 0; i < c.members.size(); ++i) {
            for (std::size_t j = i + 1; j < c.members.size(); ++j) {
              EXPECT_TRUE(p.adjacent(*p.find(c.members[i]), *p.find(c.members[j])));
            }
          }
        }
      }
    }
  }
}
