#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "interlock/app.hpp"
#include "text.hpp"

namespace interlock::app {
namespace {

namespace fs = std::filesystem;

// Flag values; each one that is set overrides the config file.
struct Overrides {
  std::optional<std::string> input, out, key;

  std::optional<std::string> fixture, provider, base_kind, base_id, cache_dir;
  std::optional<std::size_t> max_nodes, max_depth;
  std::optional<int> retries;
  std::optional<double> rate_limit;

  std::optional<std::size_t> company_star, director_star;

  std::vector<std::string> modes;
  std::optional<std::size_t> max_path_len, max_paths, node_cap;
  std::vector<std::string> sources;

  std::vector<std::string> bases;
  std::optional<std::size_t> radius, min_size;

  std::vector<std::string> item_kinds;
  std::optional<std::string> min_support, sort;
  std::optional<std::size_t> top_k, min_items;

  std::vector<std::string> formats;

  std::optional<std::string> pairs, replay, record, profiles, engine_id;
};

const std::vector<std::string> kKinds{"company", "director"};

void add_dataset_options(CLI::App* sub, Overrides& o) {
  sub->add_option("-i,--input", o.input, "Directory holding companies.csv, directors.csv, affiliations.csv");
  sub->add_option("-o,--out", o.out, "Output directory");
  sub->add_option("--key", o.key, "Anonymize the dataset with this key before analysis");
}

void add_path_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--max-path-len", o.max_path_len, "Longest two-mode path for indirect connections (even, >= 4)");
  sub->add_option("--max-paths", o.max_paths, "Paths kept per pair");
}

void add_clique_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--radius", o.radius, "Ego-network radius in projection hops");
  sub->add_option("--min-size", o.min_size, "Smallest clique reported");
}

void add_itemset_options(CLI::App* sub, Overrides& o) {
  sub->add_option("--min-support", o.min_support, "Minimum support as a fraction of transactions");
  sub->add_option("--top-k", o.top_k, "Rows in the itemset report");
  sub->add_option("--sort", o.sort, "Report order")->check(CLI::IsMember({"support", "size"}));
}

std::vector<NodeKind> kinds_of(const std::vector<std::string>& names) {
  std::vector<NodeKind> out;
  for (const auto& n : names) out.push_back(parse_node_kind(n));
  return out;
}

void apply(const Overrides& o, RunConfig& c) {
  if (o.input) c.dataset_dir = *o.input;
  if (o.out) c.output_dir = *o.out;
  if (o.key) c.anonymize_key = *o.key;

  if (o.fixture) {
    c.crawl.provider = "fixture";
    c.crawl.fixture_dir = *o.fixture;
  }
  if (o.provider) c.crawl.provider = *o.provider;
  if (o.base_kind) c.crawl.base_kind = parse_node_kind(*o.base_kind);
  if (o.base_id) c.crawl.base_id = *o.base_id;
  if (o.max_nodes) c.crawl.max_nodes = *o.max_nodes;
  if (o.max_depth) c.crawl.max_depth = *o.max_depth;
  if (o.rate_limit) c.crawl.http.rate_limit_per_sec = *o.rate_limit;
  if (o.cache_dir) c.crawl.http.cache_dir = fs::path(*o.cache_dir);

  if (o.company_star) c.stats.company_star_degree = *o.company_star;
  if (o.director_star) c.stats.director_star_degree = *o.director_star;

  if (o.max_path_len) c.paths.max_path_len = *o.max_path_len;
  if (o.max_paths) c.paths.max_paths_per_pair = *o.max_paths;
  if (o.node_cap) c.paths.node_cap = *o.node_cap;

  if (o.modes.size() == 1) c.cliques.mode = parse_node_kind(o.modes.front());
  if (!o.bases.empty()) c.cliques.bases = o.bases;
  if (o.radius) c.cliques.radius = *o.radius;
  if (o.min_size) c.cliques.min_size = *o.min_size;

  if (!o.item_kinds.empty()) c.itemsets.item_kinds = kinds_of(o.item_kinds);
  if (o.min_support) c.itemsets.min_support = *o.min_support;
  if (o.top_k) c.itemsets.top_k = *o.top_k;
  if (o.sort) c.itemsets.sort = parse_report_sort(*o.sort);
  if (o.min_items) c.itemsets.min_items = *o.min_items;

  if (!o.formats.empty()) {
    c.exports = {false, false};
    for (const auto& f : o.formats) (f == "graphml" ? c.exports.graphml : c.exports.dot) = true;
  }

  if (o.pairs) c.relations.pairs = *o.pairs;
  if (o.replay) c.relations.replay_dir = fs::path(*o.replay);
  if (o.record) c.relations.record_dir = fs::path(*o.record);
  if (o.profiles) c.relations.profiles_dir = fs::path(*o.profiles);
  if (o.engine_id) c.relations.search_engine_id = *o.engine_id;
}

void print_files(std::ostream& out, const fs::path& dir, const std::vector<std::string>& files) {
  for (const auto& f : files) out << "wrote " << (dir / f).string() << '\n';
}

void print_section(std::ostream& out, const fs::path& dir, const ReportSection& section) {
  print_files(out, dir, section.files);
  for (const auto& n : section.notes) out << n << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Director-company interlock network construction and analysis", "interlock"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string config_path;
  Overrides o;
  app.add_option("-c,--config", config_path, "INI configuration file; flags override its values")
      ->check(CLI::ExistingFile);

  auto* crawl = app.add_subcommand("crawl", "Breadth-first crawl from a base node into dataset files");
  crawl->add_option("-o,--out", o.out, "Output directory for the dataset");
  crawl->add_option("--fixture", o.fixture, "Serve pages from the dataset in this directory");
  crawl->add_option("--provider", o.provider, "Page provider")->check(CLI::IsMember({"fixture", "http"}));
  crawl->add_option("--base-kind", o.base_kind, "Kind of the base node")->check(CLI::IsMember(kKinds));
  crawl->add_option("--base-id", o.base_id, "CIN or DIN of the base node");
  crawl->add_option("--max-nodes", o.max_nodes, "Stop after this many pages");
  crawl->add_option("--max-depth", o.max_depth, "Bipartite hops from the base");
  crawl->add_option("--retries", o.retries, "Extra attempts per failed fetch");
  crawl->add_option("--rate-limit", o.rate_limit, "HTTP requests per second");
  crawl->add_option("--cache-dir", o.cache_dir, "HTTP page cache directory");

  auto* analyze = app.add_subcommand("analyze", "Run every analysis and write report.txt");
  add_dataset_options(analyze, o);
  add_path_options(analyze, o);
  add_clique_options(analyze, o);
  add_itemset_options(analyze, o);
  analyze->add_option("--base", o.bases, "Clique stats base node (repeatable)");
  analyze->add_option("--node-cap", o.node_cap, "Skip full-network paths and cliques above this many nodes");

  auto* stats = app.add_subcommand("stats", "Degree histograms, star nodes and cut vertices");
  add_dataset_options(stats, o);
  stats->add_option("--company-star", o.company_star, "Star threshold for companies");
  stats->add_option("--director-star", o.director_star, "Star threshold for directors");

  auto* project = app.add_subcommand("project", "One-mode projections and indirect connections");
  add_dataset_options(project, o);
  add_path_options(project, o);
  project->add_option("--mode", o.modes, "Projection mode (default: both)")->check(CLI::IsMember(kKinds));
  project->add_option("--source", o.sources, "Only pairs starting at this node (repeatable; needs one --mode)");

  auto* cliques = app.add_subcommand("cliques", "Maximal cliques and per-base clique statistics");
  add_dataset_options(cliques, o);
  add_clique_options(cliques, o);
  cliques->add_option("--mode", o.modes, "Projection mode")->check(CLI::IsMember(kKinds))->expected(1);
  cliques->add_option("--base", o.bases, "Base node (repeatable)");

  auto* itemsets = app.add_subcommand("itemsets", "Maximal frequent itemsets");
  add_dataset_options(itemsets, o);
  add_itemset_options(itemsets, o);
  itemsets->add_option("--item-kind", o.item_kinds, "Item kind (repeatable)")->check(CLI::IsMember(kKinds));
  itemsets->add_option("--min-items", o.min_items, "Drop itemsets with fewer items");

  auto* relations = app.add_subcommand("relations", "Personal and professional relations for director pairs");
  relations->add_option("-o,--out", o.out, "Output directory");
  relations->add_option("--pairs", o.pairs, "CSV with din_1,name_1,din_2,name_2");
  relations->add_option("--replay", o.replay, "Directory of recorded search results and responses");
  relations->add_option("--record", o.record, "Append every client call to fixtures in this directory");
  relations->add_option("--profiles", o.profiles, "Directory of <din>.json profiles");
  relations->add_option("--retries", o.retries, "Extra attempts per failed client call");
  relations->add_option("--engine-id", o.engine_id, "Search engine id for live mode");

  auto* exports = app.add_subcommand("export", "GraphML and DOT exports");
  add_dataset_options(exports, o);
  exports->add_option("--mode", o.modes, "Projection mode (default: both)")->check(CLI::IsMember(kKinds));
  exports->add_option("--format", o.formats, "graphml or dot (repeatable)")->check(CLI::IsMember({"graphml", "dot"}));

  auto* anonymize = app.add_subcommand("anonymize", "Write a pseudonymized copy of a dataset");
  anonymize->add_option("-i,--input", o.input, "Dataset directory");
  anonymize->add_option("-o,--out", o.out, "Output directory");
  anonymize->add_option("--key", o.key, std::string("Pseudonym key (default: $") + kAnonKeyEnv + ")");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    apply(o, config);
    if (o.retries) (relations->parsed() ? config.relations.retries : config.crawl.retries) = *o.retries;

    if (crawl->parsed()) {
      const auto s = cmd_crawl(config);
      for (const auto& f : s.files) out << "wrote " << f.string() << '\n';
      out << "companies = " << s.companies << "\ndirectors = " << s.directors
          << "\naffiliations = " << s.affiliations << "\ndepth_reached = " << s.depth_reached
          << "\ntruncated = " << (s.truncated ? "true" : "false") << '\n';
    } else if (analyze->parsed()) {
      const auto report = cmd_analyze(config);
      for (const auto& section : report.sections) print_section(out, config.output_dir, section);
      out << "wrote " << report.manifest.string() << '\n';
    } else if (stats->parsed()) {
      print_files(out, config.output_dir, cmd_stats(config).files);
      std::ifstream summary(config.output_dir / "stats_summary.txt");
      out << summary.rdbuf();
    } else if (project->parsed()) {
      const auto modes = o.modes.empty() ? std::vector<NodeKind>{NodeKind::company, NodeKind::director}
                                         : kinds_of(o.modes);
      if (!o.sources.empty()) {
        if (modes.size() != 1) throw ConfigError("--source needs exactly one --mode");
        (modes.front() == NodeKind::company ? config.paths.company_sources
                                            : config.paths.director_sources) = o.sources;
      }
      print_section(out, config.output_dir, cmd_project(config, modes));
    } else if (cliques->parsed()) {
      print_section(out, config.output_dir, cmd_cliques(config));
    } else if (itemsets->parsed()) {
      print_section(out, config.output_dir, cmd_itemsets(config));
    } else if (relations->parsed()) {
      const auto s = cmd_relations(config);
      for (const auto& f : s.files) out << "wrote " << f.string() << '\n';
      out << "pairs = " << s.pairs << "\nidentified = " << s.identified
          << "\nnot_available = " << s.not_available << "\nerror = " << s.errors
          << "\nprofessional_matches = " << s.professional_matches << '\n';
    } else if (exports->parsed()) {
      const auto modes = o.modes.empty() ? std::vector<NodeKind>{NodeKind::company, NodeKind::director}
                                         : kinds_of(o.modes);
      print_section(out, config.output_dir, cmd_export(config, modes));
    } else if (anonymize->parsed()) {
      if (config.anonymize_key.empty()) {
        if (const char* env = std::getenv(kAnonKeyEnv)) config.anonymize_key = env;
      }
      for (const auto& f : cmd_anonymize(config)) out << "wrote " << f.string() << '\n';
    }
  } catch (const ConfigError& e) {
    err << "interlock: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "interlock: error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace interlock::app
