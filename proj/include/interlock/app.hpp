#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "interlock/crawler.hpp"
#include "interlock/graph.hpp"
#include "interlock/http_provider.hpp"
#include "interlock/itemsets.hpp"
#include "interlock/relations.hpp"

namespace interlock::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kAnonKeyEnv = "INTERLOCK_ANON_KEY";

// Invalid configuration or usage. Raised before any output is written.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An analysis stage failed; outputs written earlier in the run were removed.
class StageError : public std::runtime_error {
 public:
  StageError(std::string stage, const std::string& cause)
      : std::runtime_error("stage '" + stage + "' failed: " + cause), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct CrawlSettings {
  std::string provider = "fixture";  // "fixture" or "http"
  std::filesystem::path fixture_dir;
  NodeKind base_kind = NodeKind::company;
  std::string base_id;
  std::optional<std::size_t> max_nodes;
  std::optional<std::size_t> max_depth;
  int retries = 2;
  HttpProviderConfig http;  // rate limit and cache dir live here
};

struct StatsSettings {
  std::size_t company_star_degree = kDefaultCompanyStarDegree;
  std::size_t director_star_degree = kDefaultDirectorStarDegree;
};

struct PathSettings {
  std::size_t max_path_len = 6;
  std::size_t max_paths_per_pair = 1000;
  std::vector<std::string> company_sources;
  std::vector<std::string> director_sources;
  // `analyze` skips full-network indirect paths and cliques for a mode with
  // more nodes than this. 0 disables the cap.
  std::size_t node_cap = 200;
};

struct CliqueSettings {
  NodeKind mode = NodeKind::director;
  std::vector<std::string> bases;
  std::size_t radius = 3;
  std::size_t min_size = 3;
};

struct ItemsetSettings {
  std::vector<NodeKind> item_kinds{NodeKind::director, NodeKind::company};
  std::string min_support = "0.0001";  // kept as text for exact arithmetic
  std::size_t top_k = 20;
  ReportSort sort = ReportSort::support;
  std::size_t min_items = 1;
};

struct ExportSettings {
  bool graphml = true;
  bool dot = true;
};

struct RelationSettings {
  std::filesystem::path pairs;
  std::optional<std::filesystem::path> replay_dir;
  std::optional<std::filesystem::path> record_dir;
  std::optional<std::filesystem::path> profiles_dir;
  int retries = 2;
  std::string search_engine_id;
  bool fetch_pages = true;
};

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path output_dir;
  std::string anonymize_key;
  CrawlSettings crawl;
  StatsSettings stats;
  PathSettings paths;
  CliqueSettings cliques;
  ItemsetSettings itemsets;
  ExportSettings exports;
  RelationSettings relations;
};

// INI text with one section per module (see README). Relative paths are
// resolved against `base_dir`. Unknown sections or keys and malformed
// values raise ConfigError.
RunConfig parse_config(std::string_view ini_text, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

// Every effective setting as key = value, in a fixed order.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

enum class Command { crawl, analyze, stats, project, cliques, itemsets, relations, exports, anonymize };

// Range checks for the settings `command` uses. Throws ConfigError.
void validate_config(const RunConfig& config, Command command);

struct CrawlSummary {
  NodeRef base;
  std::size_t companies = 0;
  std::size_t directors = 0;
  std::size_t affiliations = 0;
  std::size_t pages_fetched = 0;
  std::size_t depth_reached = 0;
  bool truncated = false;
  std::vector<std::filesystem::path> files;
};

// Crawls and writes companies.csv, directors.csv, affiliations.csv and
// crawl_summary.txt to the output directory. Nothing is written on failure.
// `provider` overrides the configured one.
CrawlSummary cmd_crawl(const RunConfig& config, PageProvider* provider = nullptr);

struct ReportSection {
  std::string name;
  std::vector<std::string> files;  // relative to the output directory
  std::vector<std::string> notes;
};

struct AnalysisReport {
  std::string generated_at;  // UTC, ISO 8601
  std::vector<std::pair<std::string, std::string>> config;
  std::size_t companies = 0;
  std::size_t directors = 0;
  std::size_t affiliations = 0;
  bool anonymized = false;
  std::vector<ReportSection> sections;
  std::filesystem::path manifest;
};

void write_report(std::ostream& out, const AnalysisReport& report);

// Runs stats, project, cliques, itemsets and export, then writes
// report.txt. On failure every file of the run is removed and StageError
// names the stage.
AnalysisReport cmd_analyze(const RunConfig& config);

// Single stages. Each writes only its own files and the node cap does not
// apply. `modes` selects the projections to process.
ReportSection cmd_stats(const RunConfig& config);
ReportSection cmd_project(const RunConfig& config, const std::vector<NodeKind>& modes);
// Full-network cliques of cliques.mode when no bases are configured,
// otherwise per-base cliques and one stats row per base.
ReportSection cmd_cliques(const RunConfig& config);
ReportSection cmd_itemsets(const RunConfig& config);
ReportSection cmd_export(const RunConfig& config, const std::vector<NodeKind>& modes);

// Writes the anonymized dataset to the output directory.
std::vector<std::filesystem::path> cmd_anonymize(const RunConfig& config);

struct RelationsSummary {
  std::size_t pairs = 0;
  std::size_t identified = 0;
  std::size_t not_available = 0;
  std::size_t errors = 0;
  std::size_t professional_matches = 0;
  std::vector<std::filesystem::path> files;
};

// din_1,name_1,din_2,name_2
std::vector<DirectorPair> load_pairs(const std::filesystem::path& path);

// One personal row per pair plus one row per professional match into
// relations.csv, and every candidate into relations_audit.jsonl. Clients
// default to replay fixtures when configured, otherwise the live clients;
// live mode without credentials raises ConfigError.
RelationsSummary cmd_relations(const RunConfig& config, SearchClient* search = nullptr,
                               TextAnalysisClient* analysis = nullptr);

// Entry point of the `interlock` tool. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace interlock::app
