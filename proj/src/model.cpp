#include "interlock/model.hpp"

#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <array>
#include <fstream>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "interlock/csv.hpp"

namespace interlock {

namespace fs = std::filesystem;

std::string_view to_string(NodeKind kind) {
  return kind == NodeKind::company ? "company" : "director";
}

NodeKind parse_node_kind(std::string_view text) {
  if (text == "company") return NodeKind::company;
  if (text == "director") return NodeKind::director;
  throw std::invalid_argument("unknown node kind '" + std::string(text) +
                              "' (expected company or director)");
}

namespace {

enum class Table { companies, directors, affiliations };

// Describes row `index` of `table` for error messages.
using RowLocator = std::function<std::string(Table, std::size_t)>;

std::string default_locator(Table table, std::size_t index) {
  static constexpr std::array names = {"companies", "directors", "affiliations"};
  return std::string(names[static_cast<int>(table)]) + " row " + std::to_string(index + 1);
}

void validate_impl(const BipartiteDataset& d, const RowLocator& where) {
  std::unordered_set<std::string_view> cins;
  for (std::size_t i = 0; i < d.companies.size(); ++i) {
    const auto& cin = d.companies[i].cin;
    if (cin.empty()) throw IntegrityError(cin, where(Table::companies, i) + ": empty cin");
    if (!cins.insert(cin).second) {
      throw IntegrityError(cin, where(Table::companies, i) + ": duplicate cin \"" + cin + "\"");
    }
  }
  std::unordered_set<std::string_view> dins;
  for (std::size_t i = 0; i < d.directors.size(); ++i) {
    const auto& din = d.directors[i].din;
    if (din.empty()) throw IntegrityError(din, where(Table::directors, i) + ": empty din");
    if (!dins.insert(din).second) {
      throw IntegrityError(din, where(Table::directors, i) + ": duplicate din \"" + din + "\"");
    }
  }
  std::set<std::pair<std::string_view, std::string_view>> pairs;
  for (std::size_t i = 0; i < d.affiliations.size(); ++i) {
    const auto& a = d.affiliations[i];
    if (!cins.contains(a.cin)) {
      throw IntegrityError(a.cin, where(Table::affiliations, i) + ": unknown cin \"" + a.cin + "\"");
    }
    if (!dins.contains(a.din)) {
      throw IntegrityError(a.din, where(Table::affiliations, i) + ": unknown din \"" + a.din + "\"");
    }
    if (!pairs.emplace(a.cin, a.din).second) {
      throw IntegrityError(a.cin + "," + a.din, where(Table::affiliations, i) +
                                                    ": duplicate affiliation (" + a.cin +
                                                    ", " + a.din + ")");
    }
  }
}

// Reads a table, checks the header, and returns rows with their line numbers.
std::vector<std::pair<std::size_t, csv::Row>> read_table(const fs::path& path,
                                                         const csv::Row& header) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");

  csv::Reader reader(in);
  csv::Row row;
  std::vector<std::pair<std::size_t, csv::Row>> rows;
  try {
    if (!reader.next(row)) throw ParseError(path.string(), "missing header row");
    if (!row.empty() && row[0].starts_with("\xEF\xBB\xBF")) row[0].erase(0, 3);
    if (row != header) {
      std::string expected;
      for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
      throw ParseError(path.string() + ":1", "expected header '" + expected + "'");
    }
    while (reader.next(row)) {
      if (row.size() == 1 && row[0].empty()) continue;  // blank line
      if (row.size() != header.size()) {
        throw ParseError(path.string() + ":" + std::to_string(reader.line()),
                         "expected " + std::to_string(header.size()) + " columns, found " +
                             std::to_string(row.size()));
      }
      rows.emplace_back(reader.line(), row);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw ParseError(path.string(), e.what());
  }
  return rows;
}

void write_table(const fs::path& path, const csv::Row& header,
                 const std::vector<csv::Row>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  csv::write_row(out, header);
  for (const auto& r : rows) csv::write_row(out, r);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

const csv::Row kCompanyHeader = {"cin", "name", "url"};
const csv::Row kDirectorHeader = {"din", "name", "url"};
const csv::Row kAffiliationHeader = {"cin", "din"};

}  // namespace

void validate(const BipartiteDataset& dataset) { validate_impl(dataset, default_locator); }

DatasetPaths DatasetPaths::in_directory(const fs::path& dir) {
  return {dir / "companies.csv", dir / "directors.csv", dir / "affiliations.csv"};
}

BipartiteDataset load_dataset(const DatasetPaths& paths) {
  return load_dataset(paths.companies, paths.directors, paths.affiliations);
}

BipartiteDataset load_dataset(const fs::path& companies, const fs::path& directors,
                              const fs::path& affiliations) {
  BipartiteDataset d;
  auto company_rows = read_table(companies, kCompanyHeader);
  auto director_rows = read_table(directors, kDirectorHeader);
  auto affiliation_rows = read_table(affiliations, kAffiliationHeader);

  for (auto& [line, r] : company_rows) {
    d.companies.push_back({std::move(r[0]), std::move(r[1]), std::move(r[2])});
  }
  for (auto& [line, r] : director_rows) {
    d.directors.push_back({std::move(r[0]), std::move(r[1]), std::move(r[2])});
  }
  for (auto& [line, r] : affiliation_rows) {
    d.affiliations.push_back({std::move(r[0]), std::move(r[1])});
  }

  validate_impl(d, [&](Table table, std::size_t index) {
    switch (table) {
      case Table::companies:
        return companies.string() + ":" + std::to_string(company_rows[index].first);
      case Table::directors:
        return directors.string() + ":" + std::to_string(director_rows[index].first);
      case Table::affiliations:
        break;
    }
    return affiliations.string() + ":" + std::to_string(affiliation_rows[index].first);
  });
  return d;
}

DatasetPaths save_dataset(const BipartiteDataset& dataset, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const auto paths = DatasetPaths::in_directory(out_dir);

  std::vector<csv::Row> rows;
  rows.reserve(dataset.companies.size());
  for (const auto& c : dataset.companies) rows.push_back({c.cin, c.name, c.url});
  write_table(paths.companies, kCompanyHeader, rows);

  rows.clear();
  for (const auto& d : dataset.directors) rows.push_back({d.din, d.name, d.url});
  write_table(paths.directors, kDirectorHeader, rows);

  rows.clear();
  for (const auto& a : dataset.affiliations) rows.push_back({a.cin, a.din});
  write_table(paths.affiliations, kAffiliationHeader, rows);
  return paths;
}

std::string pseudonym(NodeKind kind, std::string_view id, std::string_view key) {
  std::string message = kind == NodeKind::company ? "company:" : "director:";
  message.append(id);

  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()),
       reinterpret_cast<const unsigned char*>(message.data()), message.size(), digest.data(),
       &length);

  static constexpr char hex[] = "0123456789abcdef";
  std::string out = kind == NodeKind::company ? "C-" : "D-";
  for (std::size_t i = 0; i < 6; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

BipartiteDataset anonymize(const BipartiteDataset& dataset, std::string_view key) {
  if (key.empty()) throw std::invalid_argument("anonymization key must not be empty");
  validate(dataset);

  std::unordered_map<std::string, std::string> company_map;
  std::unordered_map<std::string, std::string> director_map;
  std::unordered_map<std::string, std::string> owners;  // pseudonym -> original

  auto assign = [&](NodeKind kind, const std::string& id,
                    std::unordered_map<std::string, std::string>& map) -> const std::string& {
    auto p = pseudonym(kind, id, key);
    auto [it, fresh] = owners.emplace(p, id);
    if (!fresh && it->second != id) {
      throw IntegrityError(id, "pseudonym collision: \"" + id + "\" and \"" + it->second +
                                   "\" both map to " + p);
    }
    return map.emplace(id, std::move(p)).first->second;
  };

  BipartiteDataset out;
  out.companies.reserve(dataset.companies.size());
  for (const auto& c : dataset.companies) {
    const auto& p = assign(NodeKind::company, c.cin, company_map);
    out.companies.push_back({p, p, ""});
  }
  out.directors.reserve(dataset.directors.size());
  for (const auto& d : dataset.directors) {
    const auto& p = assign(NodeKind::director, d.din, director_map);
    out.directors.push_back({p, p, ""});
  }
  out.affiliations.reserve(dataset.affiliations.size());
  for (const auto& a : dataset.affiliations) {
    out.affiliations.push_back({company_map.at(a.cin), director_map.at(a.din)});
  }
  return out;
}

}  // namespace interlock
