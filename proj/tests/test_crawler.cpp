#include <gtest/gtest.h>

#include "interlock/crawler.hpp"
#include "oracles.hpp"

using namespace interlock;

namespace {

std::set<NodeRef> nodes_of(const BipartiteDataset& d) {
  std::set<NodeRef> out;
  for (const auto& c : d.companies) out.insert({NodeKind::company, c.cin});
  for (const auto& p : d.directors) out.insert({NodeKind::director, p.din});
  return out;
}

std::set<std::pair<std::string, std::string>> edges_within(const BipartiteDataset& d,
                                                           const std::set<NodeRef>& keep) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& a : d.affiliations) {
    if (keep.count({NodeKind::company, a.cin}) && keep.count({NodeKind::director, a.din})) {
      out.emplace(a.cin, a.din);
    }
  }
  return out;
}

// Fails the first `failures` fetches of every page with a transient error.
class FlakyProvider : public PageProvider {
 public:
  FlakyProvider(PageProvider& inner, int failures) : inner_(inner), failures_(failures) {}
  CompanyPage fetch_company(const std::string& cin) override {
    if (attempts_[cin]++ < failures_) throw std::runtime_error("timeout");
    return inner_.fetch_company(cin);
  }
  DirectorPage fetch_director(const std::string& din) override {
    if (attempts_["d:" + din]++ < failures_) throw std::runtime_error("timeout");
    return inner_.fetch_director(din);
  }

 private:
  PageProvider& inner_;
  int failures_;
  std::map<std::string, int> attempts_;
};

}  // namespace

TEST(Crawler, FixtureFromCompanyA) {
  FixtureProvider fixture(oracle::fixture_dataset());
  CountingProvider counting(fixture);
  const auto result = bfs_crawl(counting, {{NodeKind::company, "A"}});
  EXPECT_EQ(result.dataset.companies.size(), 5u);
  EXPECT_EQ(result.dataset.directors.size(), 6u);
  EXPECT_EQ(result.dataset.affiliations.size(), 12u);
  EXPECT_FALSE(result.truncated);
  EXPECT_EQ(counting.max_count(), 1);
  EXPECT_EQ(result.pages_fetched, 11u);
  // A(0) -> 1,2 (1) -> B,C (2) -> 3,4,5 (3) -> D,E (4) -> 6 (5)
  EXPECT_EQ(result.depth_reached, 5u);
  validate(result.dataset);
}

TEST(Crawler, BfsOrderIsDiscoveryOrder) {
  FixtureProvider fixture(oracle::fixture_dataset());
  const auto result = bfs_crawl(fixture, {{NodeKind::company, "A"}});
  std::vector<std::string> companies, directors;
  for (const auto& c : result.dataset.companies) companies.push_back(c.cin);
  for (const auto& d : result.dataset.directors) directors.push_back(d.din);
  EXPECT_EQ(companies, (std::vector<std::string>{"A", "B", "C", "D", "E"}));
  EXPECT_EQ(directors, (std::vector<std::string>{"1", "2", "3", "4", "5", "6"}));
}

TEST(Crawler, MaxNodesTruncates) {
  FixtureProvider fixture(oracle::fixture_dataset());
  CrawlConfig config{{NodeKind::company, "A"}};
  config.max_nodes = 1;
  const auto result = bfs_crawl(fixture, config);
  EXPECT_TRUE(result.truncated);
  EXPECT_EQ(result.dataset.companies.size(), 1u);
  EXPECT_TRUE(result.dataset.directors.empty());
  EXPECT_TRUE(result.dataset.affiliations.empty());

  config.max_nodes = 0;
  EXPECT_THROW(bfs_crawl(fixture, config), std::invalid_argument);
}

TEST(Crawler, MaxDepthGivesBall) {
  FixtureProvider fixture(oracle::fixture_dataset());
  CrawlConfig config{{NodeKind::director, "6"}};
  config.max_depth = 2;
  const auto result = bfs_crawl(fixture, config);
  EXPECT_TRUE(result.truncated);
  // 6 -> E -> 4, 5
  EXPECT_EQ(nodes_of(result.dataset), oracle::ball(oracle::fixture_dataset(), config.base, 2));
  EXPECT_EQ(result.dataset.affiliations.size(), 3u);
}

TEST(Crawler, UnknownBaseIsNotFound) {
  FixtureProvider fixture(oracle::fixture_dataset());
  EXPECT_THROW(bfs_crawl(fixture, {{NodeKind::company, "Z"}}), NotFoundError);
}

TEST(Crawler, TransientFailuresAreRetried) {
  FixtureProvider fixture(oracle::fixture_dataset());
  FlakyProvider flaky(fixture, 2);
  const auto result = bfs_crawl(flaky, {{NodeKind::company, "A"}, {}, {}, 2});
  EXPECT_EQ(result.dataset.affiliations.size(), 12u);

  FlakyProvider worse(fixture, 3);
  try {
    bfs_crawl(worse, {{NodeKind::company, "A"}, {}, {}, 2});
    FAIL() << "expected FetchError";
  } catch (const FetchError& e) {
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_EQ(e.node(), (NodeRef{NodeKind::company, "A"}));
  }
}

TEST(Crawler, MismatchedPageIdIsRejected) {
  class Liar : public PageProvider {
   public:
    CompanyPage fetch_company(const std::string&) override { return {"other", "", "", {}}; }
    DirectorPage fetch_director(const std::string&) override { return {}; }
  } liar;
  EXPECT_THROW(bfs_crawl(liar, {{NodeKind::company, "A"}}), FetchError);
}

TEST(Crawler, DuplicateLinksOnPageAreHarmless) {
  class Repeater : public PageProvider {
   public:
    CompanyPage fetch_company(const std::string& cin) override { return {cin, cin, "", {"1", "1"}}; }
    DirectorPage fetch_director(const std::string& din) override {
      return {din, din, "", {"A", "A"}};
    }
  } repeater;
  const auto result = bfs_crawl(repeater, {{NodeKind::company, "A"}});
  EXPECT_EQ(result.dataset.affiliations.size(), 1u);
  validate(result.dataset);
}

TEST(CrawlerProperty, RandomComponentsAndBalls) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 60);
    const auto d = oracle::random_dataset(size(rng), size(rng), 0.04, rng);
    if (d.affiliations.empty()) continue;
    const NodeRef base{NodeKind::company, d.affiliations.front().cin};

    FixtureProvider fixture(d);
    CountingProvider counting(fixture);
    const auto full = bfs_crawl(counting, {base});
    const auto component = oracle::ball(d, base);
    EXPECT_EQ(nodes_of(full.dataset), component);
    EXPECT_EQ(edges_within(full.dataset, component), edges_within(d, component));
    EXPECT_LE(counting.max_count(), 1);

    for (std::size_t depth : {0, 1, 2, 3}) {
      CrawlConfig config{base};
      config.max_depth = depth;
      const auto limited = bfs_crawl(fixture, config);
      const auto expect = oracle::ball(d, base, static_cast<long>(depth));
      EXPECT_EQ(nodes_of(limited.dataset), expect);
      EXPECT_EQ(edges_within(limited.dataset, expect), edges_within(d, expect));
    }
  }
}
