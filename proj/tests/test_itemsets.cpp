#include <gtest/gtest.h>

#include <cstdio>

#include "interlock/itemsets.hpp"
#include "oracles.hpp"

using namespace interlock;

namespace {

std::string item_name(std::size_t i) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "i%02zu", i);
  return buf;
}

std::string tid_name(std::size_t t) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "t%03zu", t);
  return buf;
}

TransactionDB to_db(const std::vector<oracle::ItemSet>& transactions) {
  TransactionDB db;
  for (std::size_t t = 0; t < transactions.size(); ++t) {
    Transaction tx{tid_name(t), {}};
    for (auto i : transactions[t]) tx.items.push_back(item_name(i));
    db.transactions.push_back(std::move(tx));
  }
  return db;
}

std::vector<oracle::ItemSet> random_transactions(std::size_t n_items, std::size_t n_tx,
                                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> density(0.1, 0.6);
  std::vector<oracle::ItemSet> out;
  for (std::size_t t = 0; t < n_tx; ++t) {
    std::bernoulli_distribution coin(density(rng));
    oracle::ItemSet tx;
    for (std::size_t i = 0; i < n_items; ++i) {
      if (coin(rng)) tx.push_back(i);
    }
    out.push_back(tx);
  }
  return out;
}

}  // namespace

TEST(SupportThreshold, ExactDecimalCeiling) {
  EXPECT_EQ(support_threshold(87187, 0.0001), 9u);
  EXPECT_EQ(support_threshold(54216, 0.0001), 6u);
  EXPECT_EQ(support_threshold(10000, 0.0001), 1u);
  EXPECT_EQ(support_threshold(100000, 0.0001), 10u);
  // 0.1 * 30 is 3.0000000000000004 in binary floating point.
  EXPECT_EQ(support_threshold(30, 0.1), 3u);
  EXPECT_EQ(support_threshold(10, 0.7), 7u);
  EXPECT_EQ(support_threshold(7, 1.0), 7u);
  EXPECT_EQ(support_threshold(3, 1e-30), 1u);
  EXPECT_EQ(support_threshold(5, "0.4"), 2u);
  EXPECT_EQ(support_threshold(5, "4e-1"), 2u);
  EXPECT_EQ(support_threshold(5, "0.41"), 3u);
  EXPECT_EQ(support_threshold(1000, "1.0"), 1000u);
}

TEST(SupportThreshold, DomainErrors) {
  EXPECT_THROW(support_threshold(10, 0.0), std::invalid_argument);
  EXPECT_THROW(support_threshold(10, -0.1), std::invalid_argument);
  EXPECT_THROW(support_threshold(10, 1.5), std::invalid_argument);
  EXPECT_THROW(support_threshold(0, 0.5), std::invalid_argument);
  EXPECT_THROW(support_threshold(10, "abc"), std::invalid_argument);
  EXPECT_THROW(support_threshold(10, "1.01"), std::invalid_argument);
  EXPECT_THROW(support_threshold(10, "0"), std::invalid_argument);
  EXPECT_THROW(support_threshold(10, "0.5x"), std::invalid_argument);
}

TEST(Transactions, FixtureBothDirections) {
  const auto d = oracle::fixture_dataset();
  const auto by_company = build_transactions(d, NodeKind::director);
  EXPECT_EQ(by_company.transaction_kind, NodeKind::company);
  ASSERT_EQ(by_company.size(), 5u);
  EXPECT_EQ(by_company.transactions[1].key, "B");
  EXPECT_EQ(by_company.transactions[1].items, (std::vector<std::string>{"1", "2", "3", "4", "5"}));

  const auto by_director = build_transactions(d, NodeKind::company);
  ASSERT_EQ(by_director.size(), 6u);
  EXPECT_EQ(by_director.transactions[0].items, (std::vector<std::string>{"A", "B", "C"}));
}

TEST(Itemsets, FixtureDirectorItemsets) {
  const auto db = build_transactions(oracle::fixture_dataset(), NodeKind::director);
  const auto records = mine_maximal_itemsets_at(db, 2);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0], (FrequentItemsetRecord{{"1", "2"}, 2, 0.4, {"A", "B"}}));
  EXPECT_EQ(records[1], (FrequentItemsetRecord{{"4", "5"}, 2, 0.4, {"B", "E"}}));
  EXPECT_EQ(records[2], (FrequentItemsetRecord{{"3"}, 2, 0.4, {"B", "D"}}));

  // min_support 0.4 of five transactions is the same threshold.
  EXPECT_EQ(mine_maximal_itemsets(db, 0.4), records);
}

TEST(Itemsets, FixtureCompanyItemsets) {
  const auto db = build_transactions(oracle::fixture_dataset(), NodeKind::company);
  const auto records = mine_maximal_itemsets_at(db, 2);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].items, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(records[0].intersecting, (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(records[1].items, (std::vector<std::string>{"B", "E"}));
  EXPECT_EQ(records[1].intersecting, (std::vector<std::string>{"4", "5"}));
}

TEST(Itemsets, ThresholdOneGivesMaximalTransactions) {
  const auto db = build_transactions(oracle::fixture_dataset(), NodeKind::director);
  const auto records = mine_maximal_itemsets_at(db, 1);
  std::set<std::vector<std::string>> got;
  for (const auto& r : records) got.insert(r.items);
  EXPECT_EQ(got, (std::set<std::vector<std::string>>{{"1", "2", "3", "4", "5"}, {"4", "5", "6"}}));
}

TEST(Itemsets, EmptyAndDegenerateInputs) {
  TransactionDB empty;
  EXPECT_TRUE(mine_maximal_itemsets(empty, 0.5).empty());
  EXPECT_THROW(mine_maximal_itemsets(empty, 0.0), std::invalid_argument);

  TransactionDB blank;
  blank.transactions = {{"t0", {}}, {"t1", {}}};
  EXPECT_TRUE(mine_maximal_itemsets_at(blank, 1).empty());
  EXPECT_THROW(mine_maximal_itemsets_at(blank, 0), std::invalid_argument);

  const auto db = build_transactions(oracle::fixture_dataset(), NodeKind::director);
  EXPECT_TRUE(mine_maximal_itemsets_at(db, 6).empty());
}

TEST(Itemsets, MatchesBruteForce) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 80; ++trial) {
    std::uniform_int_distribution<std::size_t> items(1, 12), txs(1, 60), threshold(2, 5);
    const auto n_items = items(rng);
    const auto transactions = random_transactions(n_items, txs(rng), rng);
    const auto min_count = threshold(rng);
    const auto truth = oracle::brute_force_maximal_itemsets(transactions, n_items, min_count);

    const auto records = mine_maximal_itemsets_at(to_db(transactions), min_count);
    std::map<oracle::ItemSet, oracle::ItemsetTruth> got;
    for (const auto& r : records) {
      oracle::ItemSet items_;
      for (const auto& i : r.items) items_.push_back(std::stoul(i.substr(1)));
      oracle::ItemsetTruth t{r.support_count, {}};
      for (const auto& k : r.intersecting) t.tids.push_back(std::stoul(k.substr(1)));
      EXPECT_DOUBLE_EQ(r.support_fraction, double(r.support_count) / double(transactions.size()));
      got.emplace(items_, t);
    }
    EXPECT_EQ(got.size(), records.size()) << "duplicate itemsets reported";
    EXPECT_EQ(got, truth) << "trial " << trial;
  }
}

TEST(Itemsets, SortedBySupportThenSize) {
  std::mt19937_64 rng(5);
  const auto records = mine_maximal_itemsets_at(to_db(random_transactions(10, 50, rng)), 3);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& a = records[i - 1];
    const auto& b = records[i];
    EXPECT_TRUE(a.support_count > b.support_count ||
                (a.support_count == b.support_count &&
                 (a.items.size() > b.items.size() ||
                  (a.items.size() == b.items.size() && a.items < b.items))));
  }
}

TEST(Itemsets, FilterMinSize) {
  const auto db = build_transactions(oracle::fixture_dataset(), NodeKind::director);
  const auto records = filter_min_size(mine_maximal_itemsets_at(db, 2), 2);
  EXPECT_EQ(records.size(), 2u);
}

TEST(Report, SortKeysAndTopK) {
  const auto db = build_transactions(oracle::fixture_dataset(), NodeKind::director);
  auto records = mine_maximal_itemsets_at(db, 1);
  const auto more = mine_maximal_itemsets_at(db, 2);
  records.insert(records.end(), more.begin(), more.end());

  const auto by_support = itemset_report(more, 2, ReportSort::support);
  ASSERT_EQ(by_support.size(), 2u);
  EXPECT_EQ(by_support[0].items, (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(by_support[1].items, (std::vector<std::string>{"4", "5"}));
  EXPECT_EQ(by_support[0].support_freq(), "0.4 (2)");

  const auto by_size = itemset_report(records, 10, ReportSort::size);
  EXPECT_EQ(by_size.size(), records.size());
  EXPECT_EQ(by_size[0].items.size(), 5u);

  EXPECT_THROW(itemset_report(records, 0, ReportSort::size), std::invalid_argument);
  EXPECT_EQ(parse_report_sort("size"), ReportSort::size);
  EXPECT_THROW(parse_report_sort("weight"), std::invalid_argument);
}

TEST(Report, SameSurnameFlag) {
  const std::vector<FrequentItemsetRecord> records{{{"1", "2"}, 2, 0.4, {"A", "B"}},
                                                   {{"3", "4"}, 2, 0.4, {"B"}}};
  const NameLookup names{{"1", "Ravi Kumar Shah"}, {"2", "Meera  SHAH "}, {"3", "A Rao"}, {"4", "B Iyer"}};
  const auto rows = itemset_report(records, 5, ReportSort::support, &names);
  EXPECT_TRUE(rows[0].same_surname);
  EXPECT_FALSE(rows[1].same_surname);
  EXPECT_EQ(surname("  Meera  SHAH "), "shah");
  EXPECT_EQ(surname(""), "");
}

TEST(Report, Distribution) {
  const std::vector<FrequentItemsetRecord> records{
      {{"1", "2"}, 3, 0.3, {}}, {{"3", "4"}, 2, 0.2, {}}, {{"5"}, 4, 0.4, {}}};
  const auto d = itemset_distribution(records);
  EXPECT_EQ(d.size_histogram, (std::map<std::size_t, std::size_t>{{1, 1}, {2, 2}}));
  EXPECT_EQ(d.size_support,
            (std::vector<std::pair<std::size_t, std::size_t>>{{1, 4}, {2, 2}, {2, 3}}));
}
