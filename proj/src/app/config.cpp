#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "interlock/app.hpp"
#include "text.hpp"

namespace interlock::app {
namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"dataset", {"dir"}},
      {"output", {"dir"}},
      {"anonymize", {"key"}},
      {"crawl",
       {"provider", "fixture_dir", "base_kind", "base_id", "max_nodes", "max_depth", "retries",
        "rate_limit_per_sec", "cache_dir", "company_url_template", "director_url_template",
        "company_name_pattern", "director_name_pattern", "director_link_pattern",
        "company_link_pattern"}},
      {"stats", {"company_star_degree", "director_star_degree"}},
      {"paths",
       {"max_path_len", "max_paths_per_pair", "node_cap", "company_sources", "director_sources"}},
      {"cliques", {"mode", "bases", "radius", "min_size"}},
      {"itemsets", {"item_kinds", "min_support", "top_k", "sort", "min_items"}},
      {"export", {"formats"}},
      {"relations",
       {"pairs", "replay_dir", "record_dir", "profiles_dir", "retries", "search_engine_id",
        "fetch_pages"}},
  };
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto part = trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start));
    if (!part.empty()) out.push_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class Section {
 public:
  Section(const ptree* tree, std::string name, fs::path base)
      : tree_(tree), name_(std::move(name)), base_(std::move(base)) {}

  std::optional<std::string> text(const std::string& key) const {
    if (!tree_) return std::nullopt;
    auto v = tree_->get_optional<std::string>(ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return trim(*v);
  }

  void set(const std::string& key, std::string& out) const {
    if (auto v = text(key)) out = *v;
  }

  void set(const std::string& key, std::size_t& out) const {
    if (auto v = text(key)) out = parse_count(key, *v);
  }

  void set(const std::string& key, std::optional<std::size_t>& out) const {
    if (auto v = text(key)) out = v->empty() ? std::nullopt : std::optional(parse_count(key, *v));
  }

  void set(const std::string& key, int& out) const {
    if (auto v = text(key)) out = static_cast<int>(parse_count(key, *v));
  }

  void set(const std::string& key, double& out) const {
    if (auto v = text(key)) {
      const char* end = v->data() + v->size();
      auto [ptr, ec] = std::from_chars(v->data(), end, out);
      if (ec != std::errc{} || ptr != end) fail(key, "a number", *v);
    }
  }

  void set(const std::string& key, bool& out) const {
    if (auto v = text(key)) {
      if (*v == "true" || *v == "yes" || *v == "1") {
        out = true;
      } else if (*v == "false" || *v == "no" || *v == "0") {
        out = false;
      } else {
        fail(key, "true or false", *v);
      }
    }
  }

  void set(const std::string& key, NodeKind& out) const {
    if (auto v = text(key)) out = parse_kind(key, *v);
  }

  void set(const std::string& key, fs::path& out) const {
    if (auto v = text(key)) out = resolve(*v);
  }

  void set(const std::string& key, std::optional<fs::path>& out) const {
    if (auto v = text(key)) out = v->empty() ? std::nullopt : std::optional(resolve(*v));
  }

  void set(const std::string& key, std::vector<std::string>& out) const {
    if (auto v = text(key)) out = split_list(*v);
  }

  NodeKind parse_kind(const std::string& key, const std::string& value) const {
    try {
      return parse_node_kind(value);
    } catch (const std::invalid_argument&) {
      fail(key, "company or director", value);
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& expected,
                         const std::string& value) const {
    throw ConfigError("config key " + name_ + "." + key + ": expected " + expected + ", got '" +
                      value + "'");
  }

 private:
  std::size_t parse_count(const std::string& key, const std::string& value) const {
    std::size_t out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (value.empty() || ec != std::errc{} || ptr != end) fail(key, "a non-negative integer", value);
    return out;
  }

  fs::path resolve(const std::string& value) const {
    fs::path p(value);
    return p.is_relative() && !base_.empty() ? base_ / p : p;
  }

  const ptree* tree_;
  std::string name_;
  fs::path base_;
};

std::string opt_text(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }
std::string opt_text(const std::optional<fs::path>& v) { return v ? v->string() : ""; }

}  // namespace

RunConfig parse_config(std::string_view ini_text, const fs::path& base_dir) {
  ptree tree;
  try {
    std::istringstream in{std::string(ini_text)};
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }

  const auto& keys = known_keys();
  for (const auto& [section, body] : tree) {
    auto it = keys.find(section);
    if (it == keys.end()) {
      if (body.empty()) throw ConfigError("config key '" + section + "' is outside any section");
      throw ConfigError("unknown config section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!it->second.count(key)) throw ConfigError("unknown config key " + section + "." + key);
    }
  }

  auto section = [&](const std::string& name) {
    auto child = tree.get_child_optional(name);
    return Section(child ? &*child : nullptr, name, base_dir);
  };

  RunConfig c;
  section("dataset").set("dir", c.dataset_dir);
  section("output").set("dir", c.output_dir);
  section("anonymize").set("key", c.anonymize_key);

  const auto crawl = section("crawl");
  crawl.set("provider", c.crawl.provider);
  crawl.set("fixture_dir", c.crawl.fixture_dir);
  crawl.set("base_kind", c.crawl.base_kind);
  crawl.set("base_id", c.crawl.base_id);
  crawl.set("max_nodes", c.crawl.max_nodes);
  crawl.set("max_depth", c.crawl.max_depth);
  crawl.set("retries", c.crawl.retries);
  crawl.set("rate_limit_per_sec", c.crawl.http.rate_limit_per_sec);
  crawl.set("cache_dir", c.crawl.http.cache_dir);
  crawl.set("company_url_template", c.crawl.http.company_url_template);
  crawl.set("director_url_template", c.crawl.http.director_url_template);
  crawl.set("company_name_pattern", c.crawl.http.company_name_pattern);
  crawl.set("director_name_pattern", c.crawl.http.director_name_pattern);
  crawl.set("director_link_pattern", c.crawl.http.director_link_pattern);
  crawl.set("company_link_pattern", c.crawl.http.company_link_pattern);

  const auto stats = section("stats");
  stats.set("company_star_degree", c.stats.company_star_degree);
  stats.set("director_star_degree", c.stats.director_star_degree);

  const auto paths = section("paths");
  paths.set("max_path_len", c.paths.max_path_len);
  paths.set("max_paths_per_pair", c.paths.max_paths_per_pair);
  paths.set("node_cap", c.paths.node_cap);
  paths.set("company_sources", c.paths.company_sources);
  paths.set("director_sources", c.paths.director_sources);

  const auto cliques = section("cliques");
  cliques.set("mode", c.cliques.mode);
  cliques.set("bases", c.cliques.bases);
  cliques.set("radius", c.cliques.radius);
  cliques.set("min_size", c.cliques.min_size);

  const auto itemsets = section("itemsets");
  if (auto v = itemsets.text("item_kinds")) {
    c.itemsets.item_kinds.clear();
    for (const auto& k : split_list(*v)) c.itemsets.item_kinds.push_back(itemsets.parse_kind("item_kinds", k));
  }
  itemsets.set("min_support", c.itemsets.min_support);
  itemsets.set("top_k", c.itemsets.top_k);
  if (auto v = itemsets.text("sort")) {
    try {
      c.itemsets.sort = parse_report_sort(*v);
    } catch (const std::invalid_argument&) {
      itemsets.fail("sort", "support or size", *v);
    }
  }
  itemsets.set("min_items", c.itemsets.min_items);

  const auto exports = section("export");
  if (auto v = exports.text("formats")) {
    c.exports = {false, false};
    for (const auto& f : split_list(*v)) {
      if (f == "graphml") {
        c.exports.graphml = true;
      } else if (f == "dot") {
        c.exports.dot = true;
      } else {
        exports.fail("formats", "graphml and/or dot", f);
      }
    }
  }

  const auto relations = section("relations");
  relations.set("pairs", c.relations.pairs);
  relations.set("replay_dir", c.relations.replay_dir);
  relations.set("record_dir", c.relations.record_dir);
  relations.set("profiles_dir", c.relations.profiles_dir);
  relations.set("retries", c.relations.retries);
  relations.set("search_engine_id", c.relations.search_engine_id);
  relations.set("fetch_pages", c.relations.fetch_pages);
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.parent_path());
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& c) {
  std::string kinds;
  for (auto k : c.itemsets.item_kinds) kinds += (kinds.empty() ? "" : ",") + std::string(to_string(k));
  std::string formats = c.exports.graphml ? "graphml" : "";
  if (c.exports.dot) formats += formats.empty() ? "dot" : ",dot";
  return {
      {"dataset.dir", c.dataset_dir.string()},
      {"output.dir", c.output_dir.string()},
      {"anonymize.key", c.anonymize_key.empty() ? "" : "(set)"},
      {"stats.company_star_degree", std::to_string(c.stats.company_star_degree)},
      {"stats.director_star_degree", std::to_string(c.stats.director_star_degree)},
      {"paths.max_path_len", std::to_string(c.paths.max_path_len)},
      {"paths.max_paths_per_pair", std::to_string(c.paths.max_paths_per_pair)},
      {"paths.node_cap", std::to_string(c.paths.node_cap)},
      {"paths.company_sources", join(c.paths.company_sources, ",")},
      {"paths.director_sources", join(c.paths.director_sources, ",")},
      {"cliques.mode", std::string(to_string(c.cliques.mode))},
      {"cliques.bases", join(c.cliques.bases, ",")},
      {"cliques.radius", std::to_string(c.cliques.radius)},
      {"cliques.min_size", std::to_string(c.cliques.min_size)},
      {"itemsets.item_kinds", kinds},
      {"itemsets.min_support", c.itemsets.min_support},
      {"itemsets.top_k", std::to_string(c.itemsets.top_k)},
      {"itemsets.sort", c.itemsets.sort == ReportSort::support ? "support" : "size"},
      {"itemsets.min_items", std::to_string(c.itemsets.min_items)},
      {"export.formats", formats},
      {"crawl.provider", c.crawl.provider},
      {"crawl.base_kind", std::string(to_string(c.crawl.base_kind))},
      {"crawl.base_id", c.crawl.base_id},
      {"crawl.max_nodes", opt_text(c.crawl.max_nodes)},
      {"crawl.max_depth", opt_text(c.crawl.max_depth)},
      {"crawl.retries", std::to_string(c.crawl.retries)},
      {"crawl.rate_limit_per_sec", format_double(c.crawl.http.rate_limit_per_sec)},
      {"crawl.cache_dir", opt_text(c.crawl.http.cache_dir)},
      {"relations.pairs", c.relations.pairs.string()},
      {"relations.replay_dir", opt_text(c.relations.replay_dir)},
      {"relations.profiles_dir", opt_text(c.relations.profiles_dir)},
      {"relations.retries", std::to_string(c.relations.retries)},
  };
}

void validate_config(const RunConfig& c, Command command) {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
  };

  require(!c.output_dir.empty(), "no output directory given (--out or [output] dir)");
  const bool reads_dataset = command != Command::crawl && command != Command::relations;
  if (reads_dataset) {
    require(!c.dataset_dir.empty(), "no dataset directory given (--input or [dataset] dir)");
  }

  switch (command) {
    case Command::crawl:
      require(c.crawl.provider == "fixture" || c.crawl.provider == "http",
              "crawl.provider must be 'fixture' or 'http', got '" + c.crawl.provider + "'");
      require(!c.crawl.base_id.empty(), "crawl.base_id is required");
      require(!c.crawl.max_nodes || *c.crawl.max_nodes >= 1, "crawl.max_nodes must be at least 1");
      require(c.crawl.retries >= 0, "crawl.retries must be non-negative");
      require(c.crawl.http.rate_limit_per_sec >= 0, "crawl.rate_limit_per_sec must be non-negative");
      if (c.crawl.provider == "fixture") {
        require(!c.crawl.fixture_dir.empty(), "crawl.fixture_dir is required for the fixture provider");
      } else {
        require(!c.crawl.http.company_url_template.empty() && !c.crawl.http.director_url_template.empty(),
                "the http provider needs company_url_template and director_url_template");
      }
      break;
    case Command::relations:
      require(!c.relations.pairs.empty(), "no pairs file given (--pairs or [relations] pairs)");
      require(c.relations.retries >= 0, "relations.retries must be non-negative");
      break;
    default:
      break;
  }

  auto in = [&](std::initializer_list<Command> set) {
    return std::find(set.begin(), set.end(), command) != set.end();
  };
  if (in({Command::analyze, Command::stats})) {
    require(c.stats.company_star_degree >= 1 && c.stats.director_star_degree >= 1,
            "star degree thresholds must be at least 1");
  }
  if (in({Command::analyze, Command::project})) {
    require(c.paths.max_path_len >= 4 && c.paths.max_path_len % 2 == 0,
            "paths.max_path_len must be even and at least 4, got " + std::to_string(c.paths.max_path_len));
    require(c.paths.max_paths_per_pair >= 1, "paths.max_paths_per_pair must be at least 1");
  }
  if (in({Command::analyze, Command::cliques})) {
    require(c.cliques.radius >= 1, "cliques.radius must be at least 1");
    require(c.cliques.min_size >= 2, "cliques.min_size must be at least 2");
  }
  if (in({Command::analyze, Command::itemsets})) {
    try {
      support_threshold(1, c.itemsets.min_support);
    } catch (const std::invalid_argument&) {
      throw ConfigError("itemsets.min_support must be a number in (0, 1], got '" +
                        c.itemsets.min_support + "'");
    }
    require(c.itemsets.top_k >= 1, "itemsets.top_k must be at least 1");
    require(!c.itemsets.item_kinds.empty(), "itemsets.item_kinds is empty");
  }
  if (in({Command::analyze, Command::exports})) {
    require(c.exports.graphml || c.exports.dot, "export.formats selects no format");
  }
  if (command == Command::anonymize) {
    require(!c.anonymize_key.empty(),
            std::string("no anonymization key given (--key, [anonymize] key or ") + kAnonKeyEnv + ")");
  }
}

}  // namespace interlock::app
