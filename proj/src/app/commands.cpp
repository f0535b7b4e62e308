#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "interlock/app.hpp"
#include "interlock/cliques.hpp"
#include "interlock/csv.hpp"
#include "interlock/export.hpp"
#include "interlock/graph.hpp"
#include "interlock/live_clients.hpp"
#include "interlock/projection.hpp"
#include "interlock/replay.hpp"
#include "text.hpp"

namespace interlock::app {
namespace {

namespace fs = std::filesystem;

// Files written by one command, removed again if the command fails.
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {}

  const fs::path& dir() const { return dir_; }

  void ensure_dir() {
    if (fs::exists(dir_)) {
      if (!fs::is_directory(dir_)) throw std::runtime_error(dir_.string() + " is not a directory");
      return;
    }
    fs::create_directories(dir_);
    created_dir_ = true;
  }

  // Registers `name` before writing so a failed write is cleaned up too.
  fs::path adopt(const std::string& name) {
    ensure_dir();
    written_.push_back(name);
    return dir_ / name;
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const auto path = adopt(name);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + path.string());
  }

  void rollback() noexcept {
    std::error_code ec;
    for (const auto& name : written_) {
      if (fs::is_regular_file(dir_ / name, ec)) fs::remove(dir_ / name, ec);
    }
    if (created_dir_ && fs::is_empty(dir_, ec)) fs::remove(dir_, ec);
    written_.clear();
  }

  std::size_t mark() const { return written_.size(); }
  std::vector<std::string> since(std::size_t mark) const {
    return {written_.begin() + static_cast<std::ptrdiff_t>(mark), written_.end()};
  }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
  bool created_dir_ = false;
};

std::string kind_name(NodeKind kind) { return std::string(to_string(kind)); }

// Identifier made safe for a file name.
std::string file_token(const std::string& id) {
  std::string out;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    out += ok ? c : '_';
  }
  return out;
}

struct Input {
  BipartiteDataset dataset;
  CorporateGraph graph;
  bool anonymized = false;
};

Input load_input(const RunConfig& config) {
  Input in;
  in.dataset = load_dataset(DatasetPaths::in_directory(config.dataset_dir));
  if (!config.anonymize_key.empty()) {
    in.dataset = anonymize(in.dataset, config.anonymize_key);
    in.anonymized = true;
  }
  in.graph = CorporateGraph(in.dataset);
  return in;
}

// Referenced identifiers must exist before anything is written.
void check_references(const RunConfig& config, const CorporateGraph& graph, bool sources, bool bases) {
  auto check = [&](NodeKind kind, const std::vector<std::string>& ids, const std::string& what) {
    for (const auto& id : ids) {
      if (!graph.find(kind, id)) {
        throw ConfigError(what + ": unknown " + kind_name(kind) + " '" + id + "'" +
                          (config.anonymize_key.empty() ? "" : " (identifiers are pseudonymized)"));
      }
    }
  };
  if (sources) {
    check(NodeKind::company, config.paths.company_sources, "paths.company_sources");
    check(NodeKind::director, config.paths.director_sources, "paths.director_sources");
  }
  if (bases) check(config.cliques.mode, config.cliques.bases, "cliques.bases");
}

class Stages {
 public:
  Stages(const RunConfig& config, const Input& input, OutputSet& out, bool apply_cap)
      : config_(config), input_(input), out_(out), apply_cap_(apply_cap) {}

  const ProjectionGraph& projection(NodeKind mode) {
    auto& slot = projections_[static_cast<int>(mode)];
    if (!slot) slot = std::make_unique<ProjectionGraph>(project(input_.graph, mode));
    return *slot;
  }

  ReportSection stats() {
    ReportSection section{"stats", {}, {}};
    const auto mark = out_.mark();
    const auto& g = input_.graph;

    std::vector<std::pair<NodeKind, std::size_t>> star_thresholds{
        {NodeKind::company, config_.stats.company_star_degree},
        {NodeKind::director, config_.stats.director_star_degree}};

    std::ostringstream summary;
    summary << "companies = " << g.size(NodeKind::company) << '\n'
            << "directors = " << g.size(NodeKind::director) << '\n'
            << "affiliations = " << g.edge_count() << '\n';

    for (auto [kind, threshold] : star_thresholds) {
      const auto hist = degree_histogram(g, kind);
      out_.write("degree_" + kind_name(kind) + ".csv", [&](std::ostream& os) {
        csv::write_row(os, {"degree", "count", "fraction", "cumulative_ge_fraction"});
        for (const auto& row : hist.rows()) {
          csv::write_row(os, {std::to_string(row.degree), std::to_string(row.count),
                              format_double(row.fraction), format_double(row.cumulative_ge_fraction)});
        }
      });
      const auto stars = star_nodes(g, kind, threshold);
      const auto k = kind_name(kind);
      summary << k << ".degree_1_fraction = " << format_double(hist.fraction(1)) << '\n'
              << k << ".degree_ge_2_fraction = " << format_double(hist.cumulative_ge_fraction(2)) << '\n'
              << k << ".max_degree = " << (hist.counts.empty() ? 0 : hist.counts.rbegin()->first) << '\n'
              << k << ".star_threshold = " << threshold << '\n'
              << k << ".star_nodes = " << stars.size() << '\n';
    }

    out_.write("star_nodes.csv", [&](std::ostream& os) {
      csv::write_row(os, {"kind", "id", "degree"});
      for (auto [kind, threshold] : star_thresholds) {
        for (const auto& s : star_nodes(g, kind, threshold)) {
          csv::write_row(os, {kind_name(kind), s.id, std::to_string(s.degree)});
        }
      }
    });

    const auto cuts = articulation_report(g);
    out_.write("cut_vertices.csv", [&](std::ostream& os) {
      csv::write_row(os, {"kind", "id", "degree"});
      for (const auto& node : cuts) {
        csv::write_row(os, {kind_name(node.kind), node.id,
                            std::to_string(g.degree(node.kind, g.index_of(node.kind, node.id)))});
      }
    });
    summary << "cut_vertices = " << cuts.size() << '\n';

    summary_ = summary.str();
    out_.write("stats_summary.txt", [&](std::ostream& os) { os << summary_; });
    section.files = out_.since(mark);
    return section;
  }

  ReportSection paths(const std::vector<NodeKind>& modes) {
    ReportSection section{"project", {}, {}};
    const auto mark = out_.mark();
    for (auto mode : modes) {
      const auto& p = projection(mode);
      const auto m = kind_name(mode);
      out_.write("projection_" + m + ".csv", [&](std::ostream& os) { write_projection_csv(os, p); });
      section.notes.push_back(m + " projection: " + std::to_string(p.size()) + " nodes, " +
                              std::to_string(p.edge_count()) + " edges");
      if (capped(mode)) {
        section.notes.push_back(m + " indirect connections skipped: " + std::to_string(p.size()) +
                                " nodes exceed node_cap " + std::to_string(config_.paths.node_cap));
        continue;
      }
      IndirectOptions options;
      options.max_path_len = config_.paths.max_path_len;
      options.max_paths_per_pair = config_.paths.max_paths_per_pair;
      const auto& sources =
          mode == NodeKind::company ? config_.paths.company_sources : config_.paths.director_sources;
      if (!sources.empty()) options.sources = sources;
      const auto connections =
          connection_strength_order(indirect_connections(input_.graph, mode, options));
      out_.write("indirect_" + m + ".csv",
                 [&](std::ostream& os) { write_path_table_csv(os, connections); });
      out_.write("indirect_" + m + "_paths.csv",
                 [&](std::ostream& os) { write_path_list_csv(os, connections); });
      const auto truncated = std::count_if(connections.begin(), connections.end(),
                                           [](const auto& c) { return c.truncated; });
      section.notes.push_back(m + " indirect pairs: " + std::to_string(connections.size()) +
                              (truncated ? " (" + std::to_string(truncated) + " truncated)" : ""));
    }
    section.files = out_.since(mark);
    return section;
  }

  ReportSection cliques(const std::vector<NodeKind>& full_modes, bool with_bases) {
    ReportSection section{"cliques", {}, {}};
    const auto mark = out_.mark();
    const auto min_size = config_.cliques.min_size;

    for (auto mode : full_modes) {
      const auto m = kind_name(mode);
      if (capped(mode)) {
        section.notes.push_back(m + " full-network cliques skipped: " +
                                std::to_string(projection(mode).size()) + " nodes exceed node_cap " +
                                std::to_string(config_.paths.node_cap));
        continue;
      }
      const auto found = maximal_cliques(projection(mode), min_size);
      out_.write("cliques_" + m + ".csv", [&](std::ostream& os) { write_cliques(os, found); });
      section.notes.push_back(m + " maximal cliques (min_size " + std::to_string(min_size) +
                              "): " + std::to_string(found.size()));
    }

    if (with_bases && !config_.cliques.bases.empty()) {
      const auto mode = config_.cliques.mode;
      const auto m = kind_name(mode);
      std::vector<CliqueStats> rows;
      for (const auto& base : config_.cliques.bases) {
        rows.push_back(clique_stats(input_.graph, projection(mode), base, config_.cliques.radius, min_size));
        out_.write("cliques_" + m + "_base_" + file_token(base) + ".csv",
                   [&](std::ostream& os) { write_cliques(os, rows.back().cliques); });
      }
      out_.write("clique_stats_" + m + ".csv", [&](std::ostream& os) { write_clique_stats(os, rows); });
      section.notes.push_back(m + " clique stats rows: " + std::to_string(rows.size()) + " (radius " +
                              std::to_string(config_.cliques.radius) + ")");
    }
    section.files = out_.since(mark);
    return section;
  }

  ReportSection itemsets() {
    ReportSection section{"itemsets", {}, {}};
    const auto mark = out_.mark();
    const auto& s = config_.itemsets;
    for (auto kind : s.item_kinds) {
      const auto k = kind_name(kind);
      const auto db = build_transactions(input_.dataset, kind);
      std::vector<FrequentItemsetRecord> records;
      std::size_t threshold = 0;
      if (db.size() > 0) {
        threshold = support_threshold(db.size(), s.min_support);
        records = filter_min_size(mine_maximal_itemsets_at(db, threshold), s.min_items);
      }
      NameLookup names;
      if (kind == NodeKind::director) {
        for (const auto& d : input_.dataset.directors) names.emplace(d.din, d.name);
      } else {
        for (const auto& c : input_.dataset.companies) names.emplace(c.cin, c.name);
      }
      const auto report = itemset_report(records, s.top_k, s.sort, &names);
      out_.write("itemsets_" + k + ".csv", [&](std::ostream& os) {
        csv::write_row(os, {"support_freq", "support_count", "size", "items", "intersecting", "same_surname"});
        for (const auto& row : report) {
          csv::write_row(os, {row.support_freq(), std::to_string(row.support_count),
                              std::to_string(row.items.size()), join(row.items, ";"),
                              join(row.intersecting, ";"), row.same_surname ? "yes" : "no"});
        }
      });
      const auto dist = itemset_distribution(records);
      out_.write("itemsets_" + k + "_sizes.csv", [&](std::ostream& os) {
        csv::write_row(os, {"size", "count"});
        for (auto [size, count] : dist.size_histogram) {
          csv::write_row(os, {std::to_string(size), std::to_string(count)});
        }
      });
      out_.write("itemsets_" + k + "_size_support.csv", [&](std::ostream& os) {
        csv::write_row(os, {"size", "support_count"});
        for (auto [size, support] : dist.size_support) {
          csv::write_row(os, {std::to_string(size), std::to_string(support)});
        }
      });
      section.notes.push_back(k + " itemsets: " + std::to_string(records.size()) +
                              " maximal over " + std::to_string(db.size()) +
                              " transactions at support count " + std::to_string(threshold));
    }
    section.files = out_.since(mark);
    return section;
  }

  ReportSection exports(const std::vector<NodeKind>& modes) {
    ReportSection section{"export", {}, {}};
    const auto mark = out_.mark();
    const auto& g = input_.graph;
    if (config_.exports.graphml) {
      out_.write("two_mode.graphml", [&](std::ostream& os) { write_graphml(os, g); });
    }
    if (config_.exports.dot) out_.write("two_mode.dot", [&](std::ostream& os) { write_dot(os, g); });
    for (auto mode : modes) {
      const auto& p = projection(mode);
      const auto m = kind_name(mode);
      if (config_.exports.graphml) {
        out_.write("projection_" + m + ".graphml", [&](std::ostream& os) { write_graphml(os, p); });
      }
      if (config_.exports.dot) {
        out_.write("projection_" + m + ".dot", [&](std::ostream& os) { write_dot(os, p); });
      }
    }
    section.files = out_.since(mark);
    return section;
  }

  const std::string& summary() const { return summary_; }

 private:
  bool capped(NodeKind mode) {
    return apply_cap_ && config_.paths.node_cap > 0 && projection(mode).size() > config_.paths.node_cap;
  }

  static void write_cliques(std::ostream& os, const std::vector<MaximalClique>& cliques) {
    csv::write_row(os, {"members", "size", "shared_intersection_count", "shared_union_count"});
    for (const auto& c : cliques) {
      csv::write_row(os, {join(c.members, ";"), std::to_string(c.size()),
                          std::to_string(c.shared_intersection.size()),
                          std::to_string(c.shared_union.size())});
    }
  }

  static void write_clique_stats(std::ostream& os, const std::vector<CliqueStats>& rows) {
    csv::write_row(os, {"base", "radius", "min_size", "same_mode_nodes", "opposite_mode_nodes",
                        "clique_count", "mean_size", "largest_size", "largest_shared",
                        "smallest_size", "smallest_shared", "most_shared_size", "most_shared_shared",
                        "least_shared_size", "least_shared_shared"});
    auto pair = [](const std::optional<CliqueSummary>& s, csv::Row& row) {
      row.push_back(s ? std::to_string(s->size) : "");
      row.push_back(s ? std::to_string(s->shared) : "");
    };
    for (const auto& r : rows) {
      csv::Row row{r.base,
                   std::to_string(r.radius),
                   std::to_string(r.min_size),
                   std::to_string(r.neighborhood_same),
                   std::to_string(r.neighborhood_opposite),
                   std::to_string(r.clique_count),
                   format_double(r.mean_size)};
      pair(r.largest, row);
      pair(r.smallest, row);
      pair(r.most_shared, row);
      pair(r.least_shared, row);
      csv::write_row(os, row);
    }
  }

  const RunConfig& config_;
  const Input& input_;
  OutputSet& out_;
  bool apply_cap_;
  std::unique_ptr<ProjectionGraph> projections_[2];
  std::string summary_;
};

const std::vector<NodeKind> kBothModes{NodeKind::company, NodeKind::director};

// Runs one stage with its own rollback.
template <typename F>
ReportSection single_stage(const RunConfig& config, Command command, bool sources, bool bases, F&& body) {
  validate_config(config, command);
  const auto input = load_input(config);
  check_references(config, input.graph, sources, bases);
  OutputSet out(config.output_dir);
  try {
    Stages stages(config, input, out, /*apply_cap=*/false);
    return body(stages);
  } catch (...) {
    out.rollback();
    throw;
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

CrawlSummary cmd_crawl(const RunConfig& config, PageProvider* provider) {
  validate_config(config, Command::crawl);
  std::unique_ptr<PageProvider> owned;
  if (!provider) {
    if (config.crawl.provider == "fixture") {
      owned = fixture_provider(load_dataset(DatasetPaths::in_directory(config.crawl.fixture_dir)));
    } else {
      owned = std::make_unique<HttpPageProvider>(config.crawl.http);
    }
    provider = owned.get();
  }

  CrawlConfig crawl;
  crawl.base = {config.crawl.base_kind, config.crawl.base_id};
  crawl.max_nodes = config.crawl.max_nodes;
  crawl.max_depth = config.crawl.max_depth;
  crawl.retries = config.crawl.retries;
  const auto result = bfs_crawl(*provider, crawl);

  CrawlSummary summary;
  summary.base = crawl.base;
  summary.companies = result.dataset.companies.size();
  summary.directors = result.dataset.directors.size();
  summary.affiliations = result.dataset.affiliations.size();
  summary.pages_fetched = result.pages_fetched;
  summary.depth_reached = result.depth_reached;
  summary.truncated = result.truncated;

  OutputSet out(config.output_dir);
  try {
    for (const char* name : {"companies.csv", "directors.csv", "affiliations.csv"}) out.adopt(name);
    const auto paths = save_dataset(result.dataset, config.output_dir);
    out.write("crawl_summary.txt", [&](std::ostream& os) {
      os << "base = " << to_string(summary.base.kind) << ':' << summary.base.id << '\n'
         << "companies = " << summary.companies << '\n'
         << "directors = " << summary.directors << '\n'
         << "affiliations = " << summary.affiliations << '\n'
         << "pages_fetched = " << summary.pages_fetched << '\n'
         << "depth_reached = " << summary.depth_reached << '\n'
         << "truncated = " << (summary.truncated ? "true" : "false") << '\n';
    });
    summary.files = {paths.companies, paths.directors, paths.affiliations,
                     config.output_dir / "crawl_summary.txt"};
  } catch (...) {
    out.rollback();
    throw;
  }
  return summary;
}

void write_report(std::ostream& out, const AnalysisReport& report) {
  out << "# interlock analysis report\n\n[metadata]\n"
      << "generated_at = " << report.generated_at << '\n'
      << "companies = " << report.companies << '\n'
      << "directors = " << report.directors << '\n'
      << "affiliations = " << report.affiliations << '\n'
      << "anonymized = " << (report.anonymized ? "true" : "false") << '\n';
  for (const auto& [key, value] : report.config) out << "config." << key << " = " << value << '\n';
  for (const auto& section : report.sections) {
    out << "\n[" << section.name << "]\n";
    for (const auto& f : section.files) out << "file = " << f << '\n';
    for (const auto& n : section.notes) out << "note = " << n << '\n';
  }
}

AnalysisReport cmd_analyze(const RunConfig& config) {
  validate_config(config, Command::analyze);
  const auto input = load_input(config);
  check_references(config, input.graph, true, true);

  AnalysisReport report;
  report.generated_at = utc_now();
  report.config = config_echo(config);
  report.companies = input.dataset.companies.size();
  report.directors = input.dataset.directors.size();
  report.affiliations = input.dataset.affiliations.size();
  report.anonymized = input.anonymized;

  OutputSet out(config.output_dir);
  Stages stages(config, input, out, /*apply_cap=*/true);
  const std::vector<std::pair<std::string, std::function<ReportSection()>>> plan{
      {"stats", [&] { return stages.stats(); }},
      {"project", [&] { return stages.paths(kBothModes); }},
      {"cliques", [&] { return stages.cliques(kBothModes, true); }},
      {"itemsets", [&] { return stages.itemsets(); }},
      {"export", [&] { return stages.exports(kBothModes); }},
  };
  std::string stage = "setup";
  try {
    for (const auto& [name, run] : plan) {
      stage = name;
      report.sections.push_back(run());
    }
    stage = "report";
    out.write("report.txt", [&](std::ostream& os) { write_report(os, report); });
  } catch (const std::exception& e) {
    out.rollback();
    throw StageError(stage, e.what());
  }
  report.manifest = config.output_dir / "report.txt";
  return report;
}

ReportSection cmd_stats(const RunConfig& config) {
  return single_stage(config, Command::stats, false, false, [](Stages& s) { return s.stats(); });
}

ReportSection cmd_project(const RunConfig& config, const std::vector<NodeKind>& modes) {
  return single_stage(config, Command::project, true, false, [&](Stages& s) { return s.paths(modes); });
}

ReportSection cmd_cliques(const RunConfig& config) {
  const bool full = config.cliques.bases.empty();
  return single_stage(config, Command::cliques, false, true, [&](Stages& s) {
    return s.cliques(full ? std::vector<NodeKind>{config.cliques.mode} : std::vector<NodeKind>{}, !full);
  });
}

ReportSection cmd_itemsets(const RunConfig& config) {
  return single_stage(config, Command::itemsets, false, false, [](Stages& s) { return s.itemsets(); });
}

ReportSection cmd_export(const RunConfig& config, const std::vector<NodeKind>& modes) {
  return single_stage(config, Command::exports, false, false, [&](Stages& s) { return s.exports(modes); });
}

std::vector<fs::path> cmd_anonymize(const RunConfig& config) {
  validate_config(config, Command::anonymize);
  const auto dataset = anonymize(load_dataset(DatasetPaths::in_directory(config.dataset_dir)),
                                 config.anonymize_key);
  OutputSet out(config.output_dir);
  try {
    for (const char* name : {"companies.csv", "directors.csv", "affiliations.csv"}) out.adopt(name);
    const auto paths = save_dataset(dataset, config.output_dir);
    return {paths.companies, paths.directors, paths.affiliations};
  } catch (...) {
    out.rollback();
    throw;
  }
}

std::vector<DirectorPair> load_pairs(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open pairs file " + path.string());
  csv::Reader reader(in);
  csv::Row row;
  const csv::Row header{"din_1", "name_1", "din_2", "name_2"};
  if (!reader.next(row) || row != header) {
    throw std::runtime_error(path.string() + ":1: expected header din_1,name_1,din_2,name_2");
  }
  std::vector<DirectorPair> pairs;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != 4) {
      throw std::runtime_error(path.string() + ":" + std::to_string(reader.line()) +
                               ": expected 4 columns, got " + std::to_string(row.size()));
    }
    pairs.push_back({row[0], row[1], row[2], row[3]});
  }
  return pairs;
}

RelationsSummary cmd_relations(const RunConfig& config, SearchClient* search,
                               TextAnalysisClient* analysis) {
  validate_config(config, Command::relations);
  const auto& s = config.relations;
  const auto pairs = load_pairs(s.pairs);

  std::unique_ptr<SearchClient> own_search;
  std::unique_ptr<TextAnalysisClient> own_analysis;
  if (!search || !analysis) {
    if (s.replay_dir) {
      try {
        own_search = std::make_unique<ReplaySearchClient>(*s.replay_dir);
        own_analysis = std::make_unique<ReplayAnalysisClient>(*s.replay_dir);
      } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("replay fixtures unusable: ") + e.what());
      }
    } else {
      std::vector<std::string> missing;
      const auto creds = credentials_from_env(missing);
      if (s.search_engine_id.empty()) missing.push_back("relations.search_engine_id (or --engine-id)");
      if (!missing.empty()) {
        throw ConfigError("live relation lookup needs " + join(missing, ", ") +
                          "; set them, or pass --replay DIR to use recorded fixtures");
      }
      LiveSearchConfig sc;
      sc.api_key = creds.search_api_key;
      sc.engine_id = s.search_engine_id;
      sc.fetch_pages = s.fetch_pages;
      own_search = std::make_unique<HttpSearchClient>(sc);
      own_analysis = std::make_unique<HttpLlmClient>(LiveLlmConfig{
          LiveLlmConfig{}.endpoint, creds.llm_api_key, creds.llm_model});
    }
    if (!search) search = own_search.get();
    if (!analysis) analysis = own_analysis.get();
  }

  std::unique_ptr<RecordingSearchClient> rec_search;
  std::unique_ptr<RecordingAnalysisClient> rec_analysis;
  if (s.record_dir) {
    fs::create_directories(*s.record_dir);
    rec_search = std::make_unique<RecordingSearchClient>(*search, *s.record_dir);
    rec_analysis = std::make_unique<RecordingAnalysisClient>(*analysis, *s.record_dir);
    search = rec_search.get();
    analysis = rec_analysis.get();
  }

  RelationOptions options;
  options.retries = s.retries;

  RelationsSummary summary;
  summary.pairs = pairs.size();
  std::vector<RelationFinding> findings;
  std::vector<std::pair<const DirectorPair*, ProfessionalMatch>> matches;
  for (const auto& pair : pairs) {
    findings.push_back(identify_personal_relation(pair, *search, *analysis, options));
    switch (findings.back().status) {
      case RelationStatus::identified: ++summary.identified; break;
      case RelationStatus::not_available: ++summary.not_available; break;
      case RelationStatus::error: ++summary.errors; break;
    }
    if (s.profiles_dir) {
      const auto p1 = *s.profiles_dir / (pair.din_1 + ".json");
      const auto p2 = *s.profiles_dir / (pair.din_2 + ".json");
      if (fs::exists(p1) && fs::exists(p2)) {
        for (auto& m : match_professional_links(load_profile(p1), load_profile(p2))) {
          matches.emplace_back(&pair, std::move(m));
        }
      }
    }
  }
  summary.professional_matches = matches.size();

  OutputSet out(config.output_dir);
  try {
    out.write("relations.csv", [&](std::ostream& os) {
      csv::write_row(os, {"din_1", "din_2", "kind", "status", "label", "evidence_url", "note"});
      for (const auto& f : findings) {
        csv::write_row(os, {f.din_1, f.din_2, "personal", std::string(to_string(f.status)), f.label,
                            f.evidence_url, f.error});
      }
      for (const auto& [pair, m] : matches) {
        csv::write_row(os, {pair->din_1, pair->din_2, "professional", "identified",
                            "shared entity: " + m.name_1, m.link,
                            m.name_2 == m.name_1 ? "" : "listed as " + m.name_2});
      }
    });
    out.write("relations_audit.jsonl", [&](std::ostream& os) {
      for (const auto& f : findings) {
        nlohmann::json doc{{"din_1", f.din_1},
                           {"din_2", f.din_2},
                           {"first_named", f.first_named},
                           {"status", to_string(f.status)},
                           {"label", f.label},
                           {"evidence_url", f.evidence_url},
                           {"error", f.error},
                           {"candidates", nlohmann::json::array()}};
        for (const auto& c : f.candidates) {
          doc["candidates"].push_back({{"query", c.query},
                                       {"url", c.url},
                                       {"status", to_string(c.status)},
                                       {"label", c.label},
                                       {"raw_response", c.raw_response}});
        }
        os << doc.dump() << '\n';
      }
    });
  } catch (...) {
    out.rollback();
    throw;
  }
  summary.files = {config.output_dir / "relations.csv", config.output_dir / "relations_audit.jsonl"};
  return summary;
}

}  // namespace interlock::app
