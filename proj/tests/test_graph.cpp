#include <gtest/gtest.h>

#include <numeric>

#include "interlock/graph.hpp"
#include "oracles.hpp"

using namespace interlock;

TEST(Graph, FixtureShape) {
  const CorporateGraph g(oracle::fixture_dataset());
  EXPECT_EQ(g.size(NodeKind::company), 5u);
  EXPECT_EQ(g.size(NodeKind::director), 6u);
  EXPECT_EQ(g.node_count(), 11u);
  EXPECT_EQ(g.edge_count(), 12u);

  const auto b = g.index_of(NodeKind::company, "B");
  EXPECT_EQ(g.degree(NodeKind::company, b), 5u);
  std::vector<std::string> members;
  for (auto i : g.neighbors(NodeKind::company, b)) members.push_back(g.id(NodeKind::director, i));
  EXPECT_EQ(members, (std::vector<std::string>{"1", "2", "3", "4", "5"}));

  EXPECT_FALSE(g.find(NodeKind::company, "Z"));
  EXPECT_THROW(g.index_of(NodeKind::director, "Z"), std::out_of_range);
  EXPECT_EQ(g.name(NodeKind::director, g.index_of(NodeKind::director, "6")), "Director Six");
}

TEST(Graph, RejectsInvalidDataset) {
  auto d = oracle::fixture_dataset();
  d.affiliations.push_back({"Q", "1"});
  EXPECT_THROW(CorporateGraph{d}, IntegrityError);
}

TEST(Histogram, FixtureCompanyAndDirector) {
  const CorporateGraph g(oracle::fixture_dataset());
  const auto companies = degree_histogram(g, NodeKind::company);
  EXPECT_EQ(companies.total, 5u);
  EXPECT_EQ(companies.counts, (std::map<std::size_t, std::size_t>{{1, 2}, {2, 1}, {3, 1}, {5, 1}}));

  // Directors 2-5 each sit on two boards; 1 on three; 6 on one.
  const auto directors = degree_histogram(g, NodeKind::director);
  EXPECT_EQ(directors.counts, (std::map<std::size_t, std::size_t>{{1, 1}, {2, 4}, {3, 1}}));
  EXPECT_EQ(directors.count_at_least(2), 5u);
  EXPECT_DOUBLE_EQ(directors.cumulative_ge_fraction(2), 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(directors.fraction(7), 0.0);
}

TEST(Histogram, RowsAreConsistent) {
  std::mt19937_64 rng(5);
  const auto d = oracle::random_dataset(40, 70, 0.05, rng);
  const CorporateGraph g(d);
  for (auto kind : {NodeKind::company, NodeKind::director}) {
    const auto h = degree_histogram(g, kind);
    const auto rows = h.rows();
    double sum = 0;
    std::size_t count_sum = 0;
    for (const auto& r : rows) {
      sum += r.fraction;
      count_sum += r.count;
      EXPECT_EQ(h.count_at_least(r.degree),
                std::accumulate(rows.begin(), rows.end(), std::size_t{0},
                                [&](std::size_t acc, const HistogramRow& o) {
                                  return o.degree >= r.degree ? acc + o.count : acc;
                                }));
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_EQ(count_sum, h.total);
    EXPECT_EQ(h.count_at_least(2), h.total - h.count(1) - h.count(0));
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i - 1].degree, rows[i].degree);
  }
}

TEST(Histogram, EmptyGraph) {
  const CorporateGraph g(BipartiteDataset{});
  const auto h = degree_histogram(g, NodeKind::company);
  EXPECT_EQ(h.total, 0u);
  EXPECT_TRUE(h.rows().empty());
  EXPECT_DOUBLE_EQ(h.fraction(1), 0.0);
}

TEST(StarNodes, ThresholdAndOrder) {
  const CorporateGraph g(oracle::fixture_dataset());
  EXPECT_EQ(star_nodes(g, NodeKind::company, 3),
            (std::vector<StarNode>{{"B", 5}, {"E", 3}}));
  EXPECT_EQ(star_nodes(g, NodeKind::director, 2),
            (std::vector<StarNode>{{"1", 3}, {"2", 2}, {"3", 2}, {"4", 2}, {"5", 2}}));
  EXPECT_TRUE(star_nodes(g, NodeKind::company, kDefaultCompanyStarDegree).empty());
  EXPECT_THROW(star_nodes(g, NodeKind::company, 0), std::invalid_argument);
}

TEST(Articulation, Fixture) {
  const auto d = oracle::fixture_dataset();
  const auto report = articulation_report(CorporateGraph(d));
  const std::vector<NodeRef> expected{{NodeKind::company, "B"},
                                      {NodeKind::company, "E"},
                                      {NodeKind::director, "1"},
                                      {NodeKind::director, "3"}};
  EXPECT_EQ(report, expected);
  const auto truth = oracle::brute_force_cut_vertices(d);
  EXPECT_EQ(std::set<NodeRef>(report.begin(), report.end()), truth);
}

TEST(Articulation, MatchesRemoveAndCheck) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    std::uniform_int_distribution<std::size_t> n(1, 15);
    std::uniform_real_distribution<double> p(0.05, 0.4);
    const auto d = oracle::random_dataset(n(rng), n(rng), p(rng), rng);
    const auto report = articulation_report(CorporateGraph(d));
    EXPECT_TRUE(std::is_sorted(report.begin(), report.end()));
    EXPECT_EQ(std::set<NodeRef>(report.begin(), report.end()), oracle::brute_force_cut_vertices(d))
        << "trial " << trial;
  }
}

TEST(Articulation, LongChainDoesNotOverflowStack) {
  BipartiteDataset d;
  constexpr int kLength = 200000;
  for (int i = 0; i < kLength; ++i) {
    d.companies.push_back({"c" + std::to_string(i), "", ""});
    d.directors.push_back({"d" + std::to_string(i), "", ""});
  }
  for (int i = 0; i < kLength; ++i) {
    d.affiliations.push_back({"c" + std::to_string(i), "d" + std::to_string(i)});
    if (i + 1 < kLength) d.affiliations.push_back({"c" + std::to_string(i + 1), "d" + std::to_string(i)});
  }
  // Path c0-d0-c1-d1-...: every node except the two ends is a cut vertex.
  EXPECT_EQ(articulation_report(CorporateGraph(d)).size(), 2u * kLength - 2);
}
