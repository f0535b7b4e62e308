#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "interlock/net.hpp"
#include "interlock/relations.hpp"

namespace interlock {

inline constexpr const char* kSearchKeyEnv = "SEARCH_API_KEY";
inline constexpr const char* kLlmKeyEnv = "LLM_API_KEY";
inline constexpr const char* kLlmModelEnv = "LLM_MODEL";

struct LiveCredentials {
  std::string search_api_key;
  std::string llm_api_key;
  std::string llm_model;
};

// Reads the three variables; names of unset or empty ones go to `missing`.
LiveCredentials credentials_from_env(std::vector<std::string>& missing);

// Google Custom Search JSON API shape: {"items": [{"link", "snippet"}]}.
struct LiveSearchConfig {
  std::string endpoint = "https://www.googleapis.com/customsearch/v1";
  std::string api_key;
  std::string engine_id;  // "cx"
  // Replace snippets with the text of the result page when it can be fetched.
  bool fetch_pages = true;
  double rate_limit_per_sec = 1.0;
};

using HttpGet = std::function<net::Response(const std::string& url)>;
using HttpPost = std::function<net::Response(const std::string& url, const std::string& body,
                                             const net::Headers& headers)>;

std::vector<SearchResult> parse_search_response(std::string_view body, std::size_t limit = 5);

// Visible text of an HTML page: scripts, styles and tags removed, common
// entities decoded, whitespace collapsed.
std::string html_to_text(std::string_view html);

class HttpSearchClient : public SearchClient {
 public:
  explicit HttpSearchClient(LiveSearchConfig config, HttpGet get = {});
  std::vector<SearchResult> search(const std::string& query) override;

 private:
  LiveSearchConfig config_;
  HttpGet get_;
  net::RateLimiter limiter_;
};

// OpenAI-compatible chat completions endpoint.
struct LiveLlmConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string api_key;
  std::string model;
};

std::string build_chat_request(const std::string& model, const std::string& prompt);
// choices[0].message.content; throws std::runtime_error otherwise.
std::string parse_chat_response(std::string_view body);

class HttpLlmClient : public TextAnalysisClient {
 public:
  explicit HttpLlmClient(LiveLlmConfig config, HttpPost post = {});
  std::string complete(const std::string& prompt) override;

 private:
  LiveLlmConfig config_;
  HttpPost post_;
};

}  // namespace interlock
