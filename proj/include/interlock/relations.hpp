#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace interlock {

// ---------------------------------------------------------------------------
// Clients

struct SearchResult {
  std::string url;
  std::string text;
};

class SearchClient {
 public:
  virtual ~SearchClient() = default;
  // At most five results are consumed per query. Throws on failure.
  virtual std::vector<SearchResult> search(const std::string& query) = 0;
};

class TextAnalysisClient {
 public:
  virtual ~TextAnalysisClient() = default;
  // Throws on failure.
  virtual std::string complete(const std::string& prompt) = 0;
};

// ---------------------------------------------------------------------------
// Personal relations

// The fifteen accepted relation labels, in prompt order.
inline constexpr std::array<std::string_view, 15> kRelationTaxonomy = {
    "husband - wife",
    "daughter - father",
    "nephew - uncle",
    "mother - son",
    "sister - brother",
    "grandfather - granddaughter",
    "grandmother - grandson",
    "cousin - cousin",
    "aunt - nephew",
    "stepmother - stepson",
    "stepfather - stepdaughter",
    "godmother - godson",
    "adoptive mother - adopted son",
    "sister-in-law - brother-in-law",
    "friend - friend",
};

inline constexpr std::string_view kNotAvailable = "Not Available";

// Maps a label to its taxonomy entry. Comparison ignores case, whitespace
// around hyphens, repeated whitespace and en/em dashes in place of '-'.
std::optional<std::string_view> match_taxonomy(std::string_view label);

enum class RelationStatus { identified, not_available, error };
std::string_view to_string(RelationStatus status);

// The three search queries for a pair, each name quoted for exact match
// with embedded quotes backslash-escaped. Throws std::invalid_argument on
// an empty name.
std::vector<std::string> build_search_queries(std::string_view name_1, std::string_view name_2);

std::string build_personal_relation_prompt(std::string_view name_1, std::string_view name_2,
                                           std::string_view text);

struct ParsedRelation {
  RelationStatus status = RelationStatus::error;
  std::string label;  // taxonomy entry when identified
};

// Reads the "Relation" key of the first well-formed JSON object in the
// response. Never throws.
ParsedRelation parse_relation_response(std::string_view response);

struct DirectorPair {
  std::string din_1;
  std::string name_1;
  std::string din_2;
  std::string name_2;
};

struct RelationCandidate {
  std::string query;
  std::string url;
  std::string raw_response;
  RelationStatus status = RelationStatus::error;
  std::string label;
};

struct RelationFinding {
  std::string din_1;
  std::string din_2;
  // The director named first in the prompt; the label is not mapped to roles.
  std::string first_named;
  RelationStatus status = RelationStatus::error;
  std::string label;
  std::string evidence_url;
  std::string raw_response;
  std::string error;
  // Every analysed result, in processing order.
  std::vector<RelationCandidate> candidates;
};

struct RelationOptions {
  int retries = 2;
  std::size_t results_per_query = 5;
};

// Runs the three queries in order and analyses each result in order; the
// first identified relation wins. With no identification the finding is
// `error` if any client call failed (after retries) or every response was
// malformed, and `not_available` otherwise.
RelationFinding identify_personal_relation(const DirectorPair& pair, SearchClient& search,
                                           TextAnalysisClient& analysis,
                                           const RelationOptions& options = {});

// ---------------------------------------------------------------------------
// Professional relations

struct ProfileEntity {
  std::string name;
  std::string link;
};

struct WebProfile {
  std::string din;
  std::vector<ProfileEntity> entities;  // canonical links, unique
};

// Trims, lower-cases scheme and host, upgrades http to https, and drops
// the fragment and any trailing slash. Non-URL text is only trimmed.
std::string canonical_link(std::string_view link);

// Canonicalizes links and keeps the first entity per link. Entities with
// an empty link are dropped.
WebProfile make_profile(std::string din, std::vector<ProfileEntity> entities);

// {"din": "...", "entities": [{"name": "...", "link": "..."}]}
// Throws std::runtime_error on malformed input.
WebProfile parse_profile(std::string_view json_text);
WebProfile load_profile(const std::filesystem::path& path);

struct ProfessionalMatch {
  std::string link;
  std::string name_1;  // surface name in the first profile
  std::string name_2;

  friend bool operator==(const ProfessionalMatch&, const ProfessionalMatch&) = default;
};

// Entities whose canonical link appears in both profiles, ordered by link.
std::vector<ProfessionalMatch> match_professional_links(const WebProfile& profile_1,
                                                        const WebProfile& profile_2);

}  // namespace interlock
