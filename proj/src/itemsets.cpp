#include "interlock/itemsets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <set>
#include <stdexcept>

#include "fpmax.hpp"

namespace interlock {

TransactionDB build_transactions(const BipartiteDataset& dataset, NodeKind item_kind) {
  validate(dataset);
  TransactionDB db;
  db.item_kind = item_kind;
  db.transaction_kind = opposite(item_kind);

  std::unordered_map<std::string, std::size_t> slot;
  if (item_kind == NodeKind::director) {
    for (const auto& c : dataset.companies) {
      slot.emplace(c.cin, db.transactions.size());
      db.transactions.push_back({c.cin, {}});
    }
    for (const auto& a : dataset.affiliations) {
      db.transactions[slot.at(a.cin)].items.push_back(a.din);
    }
  } else {
    for (const auto& d : dataset.directors) {
      slot.emplace(d.din, db.transactions.size());
      db.transactions.push_back({d.din, {}});
    }
    for (const auto& a : dataset.affiliations) {
      db.transactions[slot.at(a.din)].items.push_back(a.cin);
    }
  }
  for (auto& t : db.transactions) std::sort(t.items.begin(), t.items.end());
  return db;
}

namespace {

__extension__ typedef unsigned __int128 u128;

// Exact decimal: value = mantissa * 10^exponent.
struct Decimal {
  u128 mantissa = 0;
  int exponent = 0;
};

Decimal parse_decimal(std::string_view text) {
  Decimal d;
  std::size_t i = 0;
  int digits = 0;
  int fraction_digits = 0;
  bool seen_dot = false;
  bool any = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      any = true;
      if (d.mantissa == 0 && c == '0') {
        if (seen_dot) ++fraction_digits;
        continue;
      }
      if (++digits > 30) throw std::invalid_argument("min_support has too many digits");
      d.mantissa = d.mantissa * 10 + static_cast<unsigned>(c - '0');
      if (seen_dot) ++fraction_digits;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("min_support is not a number: " + std::string(text));
  int exp = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && text[i] == '+') ++i;
    const auto [end, ec] = std::from_chars(text.data() + i, text.data() + text.size(), exp);
    if (ec != std::errc()) throw std::invalid_argument("bad exponent in min_support");
    i = static_cast<std::size_t>(end - text.data());
  }
  if (i != text.size()) throw std::invalid_argument("min_support is not a number: " + std::string(text));
  d.exponent = exp - fraction_digits;
  return d;
}

u128 pow10(int n) {
  u128 p = 1;
  while (n-- > 0) p *= 10;
  return p;
}

std::size_t threshold_from(std::size_t n, const Decimal& d) {
  if (n < 1) throw std::invalid_argument("support threshold needs at least one transaction");
  if (d.mantissa == 0) throw std::invalid_argument("min_support must be > 0");
  // value <= 1  <=>  mantissa * 10^exponent <= 1
  if (d.exponent >= 0) {
    if (d.exponent > 0 || d.mantissa > 1) throw std::invalid_argument("min_support must be <= 1");
    return n;
  }
  if (-d.exponent > 38) return 1;  // n * value < 1
  const u128 scale = pow10(-d.exponent);
  if (d.mantissa > scale) throw std::invalid_argument("min_support must be <= 1");
  const u128 product = static_cast<u128>(n) * d.mantissa;
  return static_cast<std::size_t>((product + scale - 1) / scale);
}

}  // namespace

std::size_t support_threshold(std::size_t n_transactions, std::string_view min_support) {
  return threshold_from(n_transactions, parse_decimal(min_support));
}

std::size_t support_threshold(std::size_t n_transactions, double min_support) {
  if (!(min_support > 0.0) || !(min_support <= 1.0)) {
    throw std::invalid_argument("min_support must be in (0, 1]");
  }
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, min_support);
  if (ec != std::errc()) throw std::invalid_argument("cannot format min_support");
  return support_threshold(n_transactions, std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

std::vector<FrequentItemsetRecord> mine_maximal_itemsets(const TransactionDB& db,
                                                         double min_support) {
  if (db.size() == 0) {
    // Still validate the parameter.
    support_threshold(1, min_support);
    return {};
  }
  return mine_maximal_itemsets_at(db, support_threshold(db.size(), min_support));
}

std::vector<FrequentItemsetRecord> mine_maximal_itemsets_at(const TransactionDB& db,
                                                            std::size_t min_count) {
  if (min_count < 1) throw std::invalid_argument("itemset count threshold must be >= 1");

  // Tid-lists per item; transactions are visited in order so lists are sorted.
  std::unordered_map<std::string, std::vector<std::uint32_t>> tids;
  for (std::uint32_t t = 0; t < db.size(); ++t) {
    for (const auto& item : db.transactions[t].items) tids[item].push_back(t);
  }

  // Rank frequent items by support descending, then identifier.
  std::vector<const std::string*> frequent;
  for (const auto& [item, list] : tids) {
    if (list.size() >= min_count) frequent.push_back(&item);
  }
  std::sort(frequent.begin(), frequent.end(), [&](const std::string* a, const std::string* b) {
    const auto sa = tids[*a].size();
    const auto sb = tids[*b].size();
    return sa != sb ? sa > sb : *a < *b;
  });
  std::unordered_map<std::string_view, detail::ItemRank> rank;
  for (detail::ItemRank r = 0; r < frequent.size(); ++r) rank.emplace(*frequent[r], r);

  std::vector<detail::RankedTransaction> ranked;
  ranked.reserve(db.size());
  for (const auto& t : db.transactions) {
    detail::RankedTransaction r;
    for (const auto& item : t.items) {
      if (auto it = rank.find(item); it != rank.end()) r.push_back(it->second);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    ranked.push_back(std::move(r));
  }

  std::vector<FrequentItemsetRecord> out;
  for (const auto& set : detail::fpmax(ranked, min_count)) {
    FrequentItemsetRecord rec;
    for (auto r : set) rec.items.push_back(*frequent[r]);
    std::sort(rec.items.begin(), rec.items.end());

    std::vector<std::uint32_t> common = tids[rec.items.front()];
    for (std::size_t i = 1; i < rec.items.size() && !common.empty(); ++i) {
      const auto& other = tids[rec.items[i]];
      std::vector<std::uint32_t> next;
      std::set_intersection(common.begin(), common.end(), other.begin(), other.end(),
                            std::back_inserter(next));
      common = std::move(next);
    }
    rec.support_count = common.size();
    rec.support_fraction =
        static_cast<double>(rec.support_count) / static_cast<double>(db.size());
    for (auto t : common) rec.intersecting.push_back(db.transactions[t].key);
    out.push_back(std::move(rec));
  }

  std::sort(out.begin(), out.end(),
            [](const FrequentItemsetRecord& a, const FrequentItemsetRecord& b) {
              if (a.support_count != b.support_count) return a.support_count > b.support_count;
              if (a.items.size() != b.items.size()) return a.items.size() > b.items.size();
              return a.items < b.items;
            });
  return out;
}

std::vector<FrequentItemsetRecord> filter_min_size(std::vector<FrequentItemsetRecord> records,
                                                   std::size_t min_items) {
  std::erase_if(records, [&](const FrequentItemsetRecord& r) { return r.items.size() < min_items; });
  return records;
}

ReportSort parse_report_sort(std::string_view text) {
  if (text == "support") return ReportSort::support;
  if (text == "size") return ReportSort::size;
  throw std::invalid_argument("unknown sort key '" + std::string(text) +
                              "' (expected support or size)");
}

std::string ItemsetReportRow::support_freq() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g (%zu)", support_fraction, support_count);
  return buf;
}

std::string surname(std::string_view name) {
  const auto end = name.find_last_not_of(" \t\r\n");
  if (end == std::string_view::npos) return {};
  const auto begin = name.find_last_of(" \t\r\n", end);
  std::string out(name.substr(begin == std::string_view::npos ? 0 : begin + 1,
                              end - (begin == std::string_view::npos ? 0 : begin + 1) + 1));
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<ItemsetReportRow> itemset_report(const std::vector<FrequentItemsetRecord>& records,
                                             std::size_t top_k, ReportSort sort_key,
                                             const NameLookup* names) {
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");

  std::vector<const FrequentItemsetRecord*> order;
  order.reserve(records.size());
  for (const auto& r : records) order.push_back(&r);
  std::sort(order.begin(), order.end(),
            [sort_key](const FrequentItemsetRecord* a, const FrequentItemsetRecord* b) {
              const auto sa = a->support_count, sb = b->support_count;
              const auto za = a->items.size(), zb = b->items.size();
              if (sort_key == ReportSort::support) {
                if (sa != sb) return sa > sb;
                if (za != zb) return za > zb;
              } else {
                if (za != zb) return za > zb;
                if (sa != sb) return sa > sb;
              }
              return a->items < b->items;
            });
  if (order.size() > top_k) order.resize(top_k);

  std::vector<ItemsetReportRow> rows;
  rows.reserve(order.size());
  for (const auto* r : order) {
    ItemsetReportRow row{r->support_fraction, r->support_count, r->items, r->intersecting, false};
    if (names) {
      std::set<std::string> seen;
      for (const auto& item : r->items) {
        auto it = names->find(item);
        if (it == names->end()) continue;
        auto s = surname(it->second);
        if (s.empty()) continue;
        if (!seen.insert(std::move(s)).second) {
          row.same_surname = true;
          break;
        }
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ItemsetDistribution itemset_distribution(const std::vector<FrequentItemsetRecord>& records) {
  ItemsetDistribution d;
  for (const auto& r : records) {
    ++d.size_histogram[r.items.size()];
    d.size_support.emplace_back(r.items.size(), r.support_count);
  }
  std::sort(d.size_support.begin(), d.size_support.end());
  return d;
}

}  // namespace interlock
