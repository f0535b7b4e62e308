#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace interlock {

enum class NodeKind { company, director };

std::string_view to_string(NodeKind kind);
// Accepts "company" / "director". Throws std::invalid_argument otherwise.
NodeKind parse_node_kind(std::string_view text);
constexpr NodeKind opposite(NodeKind kind) {
  return kind == NodeKind::company ? NodeKind::director : NodeKind::company;
}

struct NodeRef {
  NodeKind kind = NodeKind::company;
  std::string id;

  friend bool operator==(const NodeRef&, const NodeRef&) = default;
  friend auto operator<=>(const NodeRef&, const NodeRef&) = default;
};

struct CompanyRecord {
  std::string cin;
  std::string name;
  std::string url;

  friend bool operator==(const CompanyRecord&, const CompanyRecord&) = default;
};

struct DirectorRecord {
  std::string din;
  std::string name;
  std::string url;

  friend bool operator==(const DirectorRecord&, const DirectorRecord&) = default;
};

struct AffiliationRecord {
  std::string cin;
  std::string din;

  friend bool operator==(const AffiliationRecord&, const AffiliationRecord&) = default;
};

struct BipartiteDataset {
  std::vector<CompanyRecord> companies;
  std::vector<DirectorRecord> directors;
  std::vector<AffiliationRecord> affiliations;

  friend bool operator==(const BipartiteDataset&, const BipartiteDataset&) = default;
};

// Malformed file content. `where` names the file and line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Uniqueness or referential-integrity violation. `offender` is the
// identifier (or "cin,din" pair) at fault.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(std::string offender, const std::string& what)
      : std::runtime_error(what), offender_(std::move(offender)) {}
  const std::string& offender() const { return offender_; }

 private:
  std::string offender_;
};

// Throws IntegrityError on the first violated invariant: empty or duplicate
// cin/din, duplicate (cin, din) affiliation, or a dangling reference.
void validate(const BipartiteDataset& dataset);

struct DatasetPaths {
  std::filesystem::path companies;
  std::filesystem::path directors;
  std::filesystem::path affiliations;

  // companies.csv, directors.csv and affiliations.csv inside `dir`.
  static DatasetPaths in_directory(const std::filesystem::path& dir);
};

BipartiteDataset load_dataset(const DatasetPaths& paths);
BipartiteDataset load_dataset(const std::filesystem::path& companies,
                              const std::filesystem::path& directors,
                              const std::filesystem::path& affiliations);

// Writes the three files into `out_dir` (created if missing).
DatasetPaths save_dataset(const BipartiteDataset& dataset,
                          const std::filesystem::path& out_dir);

// Keyed pseudonym for an identifier: "C-" or "D-" followed by the first 12
// hex characters of HMAC-SHA256(key, "company:" id) or "director:" id.
std::string pseudonym(NodeKind kind, std::string_view id, std::string_view key);

// Replaces every cin, din and name with its pseudonym and blanks urls.
// Record order and affiliation structure are preserved. Throws
// std::invalid_argument for an empty key and IntegrityError if two
// identifiers collide on the same pseudonym.
BipartiteDataset anonymize(const BipartiteDataset& dataset, std::string_view key);

}  // namespace interlock
