#include "interlock/relations.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>

namespace interlock {

using json = nlohmann::json;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Lower-case, dashes unified, no whitespace around '-', single spaces.
std::string normalize_label(std::string_view label) {
  std::string s;
  for (std::size_t i = 0; i < label.size(); ++i) {
    // U+2013 and U+2014 are E2 80 93 / E2 80 94 in UTF-8.
    if (label.compare(i, 3, "\xE2\x80\x93") == 0 || label.compare(i, 3, "\xE2\x80\x94") == 0) {
      s += '-';
      i += 2;
    } else {
      s += label[i];
    }
  }
  s = lower(trim(s));

  std::string out;
  for (char c : s) {
    const bool space = std::isspace(static_cast<unsigned char>(c));
    if (space) {
      if (!out.empty() && out.back() != ' ' && out.back() != '-') out += ' ';
    } else if (c == '-') {
      if (!out.empty() && out.back() == ' ') out.pop_back();
      out += '-';
    } else {
      out += c;
    }
  }
  return out;
}

std::string quote_name(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Index one past the '}' closing the object opened at `open`, or npos.
std::size_t matching_brace(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
    } else if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  return std::string_view::npos;
}

std::optional<json> first_object(std::string_view text) {
  for (auto open = text.find('{'); open != std::string_view::npos; open = text.find('{', open + 1)) {
    const auto close = matching_brace(text, open);
    if (close == std::string_view::npos) continue;
    auto parsed = json::parse(text.substr(open, close - open), nullptr, /*allow_exceptions=*/false);
    if (!parsed.is_discarded() && parsed.is_object()) return parsed;
  }
  return std::nullopt;
}

template <typename F>
auto with_retries(int retries, F&& f) {
  for (int attempt = 0;; ++attempt) {
    try {
      return f();
    } catch (const std::exception&) {
      if (attempt >= retries) throw;
    }
  }
}

}  // namespace

std::optional<std::string_view> match_taxonomy(std::string_view label) {
  const auto key = normalize_label(label);
  for (auto entry : kRelationTaxonomy) {
    if (normalize_label(entry) == key) return entry;
  }
  return std::nullopt;
}

std::string_view to_string(RelationStatus status) {
  switch (status) {
    case RelationStatus::identified: return "identified";
    case RelationStatus::not_available: return "not_available";
    case RelationStatus::error: break;
  }
  return "error";
}

std::vector<std::string> build_search_queries(std::string_view name_1, std::string_view name_2) {
  if (trim(name_1).empty() || trim(name_2).empty()) {
    throw std::invalid_argument("search queries need two non-empty director names");
  }
  const auto pair = quote_name(name_1) + ", " + quote_name(name_2);
  return {pair, pair + " relation", pair + " Family tree"};
}

std::string build_personal_relation_prompt(std::string_view name_1, std::string_view name_2,
                                           std::string_view text) {
  std::ostringstream p;
  p << "Task Description:\n"
    << "You are a linguistic analyst. The task is to analyze a given text and determine if "
       "there is any familial relationship implied between "
    << name_1 << " and " << name_2 << ".\n\n";

  p << "Predefined Requirements:\n"
    << "Use this list to return the identified relation:\n";
  for (std::size_t i = 0; i < kRelationTaxonomy.size(); ++i) {
    p << (i ? "; " : "") << '"' << kRelationTaxonomy[i] << '"';
  }
  p << "\n\n";

  p << "Edge Case Handling:\n"
    << "- If the text does not mention either director, return the answer as '" << kNotAvailable
    << "'.\n"
    << "- If the text mentions both directors but does not imply any familial relationship "
       "between them, return the answer as '"
    << kNotAvailable << "'.\n\n";

  p << "Output Formatting:\n"
    << "Return the identified familial relationship in JSON format with the key as: "
       "\"Relation\": \"husband - wife\"\n\n";

  p << "Text:\n" << text << "\n";
  return p.str();
}

ParsedRelation parse_relation_response(std::string_view response) {
  const auto object = first_object(response);
  if (!object) return {};

  const json* value = nullptr;
  if (auto it = object->find("Relation"); it != object->end()) {
    value = &*it;
  } else {
    for (auto it = object->begin(); it != object->end(); ++it) {
      if (lower(it.key()) == "relation") {
        value = &it.value();
        break;
      }
    }
  }
  if (value == nullptr || !value->is_string()) return {};

  const auto& text = value->get_ref<const std::string&>();
  if (lower(trim(text)) == lower(kNotAvailable)) return {RelationStatus::not_available, {}};
  if (auto entry = match_taxonomy(text)) {
    return {RelationStatus::identified, std::string(*entry)};
  }
  return {};
}

RelationFinding identify_personal_relation(const DirectorPair& pair, SearchClient& search,
                                           TextAnalysisClient& analysis,
                                           const RelationOptions& options) {
  RelationFinding finding;
  finding.din_1 = pair.din_1;
  finding.din_2 = pair.din_2;
  finding.first_named = pair.din_1;

  std::vector<std::string> queries;
  try {
    queries = build_search_queries(pair.name_1, pair.name_2);
  } catch (const std::exception& e) {
    finding.error = e.what();
    return finding;
  }

  bool any_not_available = false;
  std::string client_error;
  const std::size_t per_query = std::min<std::size_t>(options.results_per_query, 5);

  for (const auto& query : queries) {
    std::vector<SearchResult> results;
    try {
      results = with_retries(options.retries, [&] { return search.search(query); });
    } catch (const std::exception& e) {
      if (client_error.empty()) client_error = "search failed for " + query + ": " + e.what();
      continue;
    }
    if (results.size() > per_query) results.resize(per_query);

    for (const auto& result : results) {
      if (trim(result.text).empty()) continue;
      const auto prompt = build_personal_relation_prompt(pair.name_1, pair.name_2, result.text);
      RelationCandidate candidate{query, result.url, {}, RelationStatus::error, {}};
      try {
        candidate.raw_response = with_retries(options.retries, [&] { return analysis.complete(prompt); });
      } catch (const std::exception& e) {
        if (client_error.empty()) client_error = "analysis failed for " + result.url + ": " + e.what();
        continue;
      }
      const auto parsed = parse_relation_response(candidate.raw_response);
      candidate.status = parsed.status;
      candidate.label = parsed.label;
      finding.candidates.push_back(candidate);

      if (parsed.status == RelationStatus::identified) {
        finding.status = RelationStatus::identified;
        finding.label = parsed.label;
        finding.evidence_url = result.url;
        finding.raw_response = candidate.raw_response;
        return finding;
      }
      any_not_available = any_not_available || parsed.status == RelationStatus::not_available;
    }
  }

  if (!client_error.empty()) {
    finding.status = RelationStatus::error;
    finding.error = client_error;
  } else if (any_not_available || finding.candidates.empty()) {
    finding.status = RelationStatus::not_available;
  } else {
    finding.status = RelationStatus::error;
    finding.error = "no response could be parsed";
  }
  return finding;
}

std::string canonical_link(std::string_view link) {
  std::string s(trim(link));
  const auto scheme_end = s.find("://");
  if (scheme_end == std::string::npos) return s;

  std::string scheme = lower(s.substr(0, scheme_end));
  if (scheme == "http") scheme = "https";
  std::string rest = s.substr(scheme_end + 3);
  if (auto hash = rest.find('#'); hash != std::string::npos) rest.erase(hash);
  const auto path_start = rest.find_first_of("/?");
  std::string host = lower(rest.substr(0, path_start));
  std::string tail = path_start == std::string::npos ? "" : rest.substr(path_start);
  while (!tail.empty() && tail.back() == '/') tail.pop_back();
  return scheme + "://" + host + tail;
}

WebProfile make_profile(std::string din, std::vector<ProfileEntity> entities) {
  WebProfile profile{std::move(din), {}};
  std::set<std::string> seen;
  for (auto& e : entities) {
    e.link = canonical_link(e.link);
    if (e.link.empty() || !seen.insert(e.link).second) continue;
    profile.entities.push_back(std::move(e));
  }
  return profile;
}

WebProfile parse_profile(std::string_view json_text) {
  const auto doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw std::runtime_error("profile is not a JSON object");
  if (!doc.contains("din") || !doc["din"].is_string()) {
    throw std::runtime_error("profile lacks a string \"din\"");
  }
  std::vector<ProfileEntity> entities;
  if (doc.contains("entities")) {
    if (!doc["entities"].is_array()) throw std::runtime_error("profile \"entities\" is not an array");
    for (const auto& e : doc["entities"]) {
      if (!e.is_object() || !e.contains("link") || !e["link"].is_string()) {
        throw std::runtime_error("profile entity lacks a string \"link\"");
      }
      entities.push_back({e.value("name", std::string{}), e["link"].get<std::string>()});
    }
  }
  return make_profile(doc["din"].get<std::string>(), std::move(entities));
}

WebProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open profile " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_profile(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::vector<ProfessionalMatch> match_professional_links(const WebProfile& profile_1,
                                                        const WebProfile& profile_2) {
  std::map<std::string, std::string> second;
  for (const auto& e : profile_2.entities) second.emplace(canonical_link(e.link), e.name);

  std::map<std::string, ProfessionalMatch> matches;
  for (const auto& e : profile_1.entities) {
    auto link = canonical_link(e.link);
    auto it = second.find(link);
    if (it == second.end()) continue;
    matches.try_emplace(link, ProfessionalMatch{link, e.name, it->second});
  }
  std::vector<ProfessionalMatch> out;
  out.reserve(matches.size());
  for (auto& [link, m] : matches) out.push_back(std::move(m));
  return out;
}

}  // namespace interlock
