#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "interlock/model.hpp"

namespace interlock {

struct Transaction {
  std::string key;                 // the opposite-mode entity
  std::vector<std::string> items;  // ascending, no duplicates
};

struct TransactionDB {
  NodeKind item_kind = NodeKind::director;
  NodeKind transaction_kind = NodeKind::company;
  std::vector<Transaction> transactions;

  std::size_t size() const { return transactions.size(); }
};

// One transaction per opposite-mode record, in dataset order; entities
// without affiliations give empty transactions.
TransactionDB build_transactions(const BipartiteDataset& dataset, NodeKind item_kind);

// ceil(n_transactions * min_support) in exact decimal arithmetic. The
// double overload uses the shortest decimal that round-trips to the value,
// so 0.0001 is treated as exactly 1/10000. Throws std::invalid_argument
// unless 0 < min_support <= 1 and n_transactions >= 1.
std::size_t support_threshold(std::size_t n_transactions, double min_support);
std::size_t support_threshold(std::size_t n_transactions, std::string_view min_support);

inline constexpr double kDefaultMinSupport = 0.0001;

struct FrequentItemsetRecord {
  std::vector<std::string> items;  // ascending
  std::size_t support_count = 0;
  double support_fraction = 0;
  // Keys of the transactions containing every item, in DB order.
  std::vector<std::string> intersecting;

  friend bool operator==(const FrequentItemsetRecord&, const FrequentItemsetRecord&) = default;
};

// Maximal frequent itemsets at support_threshold(db.size(), min_support),
// sorted by support descending, size descending, then items. An empty DB
// yields no records.
std::vector<FrequentItemsetRecord> mine_maximal_itemsets(const TransactionDB& db,
                                                         double min_support);
// Same, with an absolute count threshold (>= 1).
std::vector<FrequentItemsetRecord> mine_maximal_itemsets_at(const TransactionDB& db,
                                                            std::size_t min_count);

// Drops records with fewer than `min_items` items.
std::vector<FrequentItemsetRecord> filter_min_size(std::vector<FrequentItemsetRecord> records,
                                                   std::size_t min_items);

enum class ReportSort { support, size };
ReportSort parse_report_sort(std::string_view text);

struct ItemsetReportRow {
  double support_fraction = 0;
  std::size_t support_count = 0;
  std::vector<std::string> items;
  std::vector<std::string> intersecting;
  // At least two members share a last name. Annotation only.
  bool same_surname = false;

  // "0.000791402 (69)"
  std::string support_freq() const;
};

using NameLookup = std::unordered_map<std::string, std::string>;

// Last whitespace-delimited token, lower-cased.
std::string surname(std::string_view name);

// Top `top_k` records by the sort key: support (count desc, size desc,
// items) or size (size desc, count desc, items). `names` maps item ids to
// display names for the surname annotation. Throws std::invalid_argument
// if top_k < 1.
std::vector<ItemsetReportRow> itemset_report(const std::vector<FrequentItemsetRecord>& records,
                                             std::size_t top_k, ReportSort sort_key,
                                             const NameLookup* names = nullptr);

struct ItemsetDistribution {
  std::map<std::size_t, std::size_t> size_histogram;
  // (size, support_count), ascending.
  std::vector<std::pair<std::size_t, std::size_t>> size_support;
};

ItemsetDistribution itemset_distribution(const std::vector<FrequentItemsetRecord>& records);

}  // namespace interlock
