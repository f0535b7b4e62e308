#include "interlock/live_clients.hpp"

#include <cctype>
#include <cstdlib>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace interlock {

using json = nlohmann::json;

LiveCredentials credentials_from_env(std::vector<std::string>& missing) {
  auto read = [&](const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
      missing.emplace_back(name);
      return std::string{};
    }
    return std::string(v);
  };
  LiveCredentials c;
  c.search_api_key = read(kSearchKeyEnv);
  c.llm_api_key = read(kLlmKeyEnv);
  c.llm_model = read(kLlmModelEnv);
  return c;
}

std::vector<SearchResult> parse_search_response(std::string_view body, std::size_t limit) {
  const auto doc = json::parse(body, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw std::runtime_error("search response is not a JSON object");
  }
  std::vector<SearchResult> out;
  if (!doc.contains("items")) return out;
  for (const auto& item : doc["items"]) {
    if (out.size() >= limit) break;
    if (!item.is_object()) continue;
    auto link = item.value("link", std::string{});
    if (link.empty()) continue;
    out.push_back({std::move(link), item.value("snippet", std::string{})});
  }
  return out;
}

namespace {

bool starts_with_ci(std::string_view s, std::size_t at, std::string_view prefix) {
  if (s.size() - at < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[at + i])) != prefix[i]) return false;
  }
  return true;
}

std::size_t find_ci(std::string_view s, std::string_view needle, std::size_t from) {
  for (std::size_t i = from; i + needle.size() <= s.size(); ++i) {
    if (starts_with_ci(s, i, needle)) return i;
  }
  return std::string_view::npos;
}

}  // namespace

std::string html_to_text(std::string_view html) {
  std::string raw;
  raw.reserve(html.size());
  for (std::size_t i = 0; i < html.size();) {
    if (html[i] != '<') {
      raw += html[i++];
      continue;
    }
    for (std::string_view skip : {"script", "style"}) {
      if (starts_with_ci(html, i + 1, skip)) {
        const auto close = find_ci(html, std::string("</") + std::string(skip), i + 1);
        i = close == std::string_view::npos ? html.size() : close;
        break;
      }
    }
    const auto end = html.find('>', i);
    i = end == std::string_view::npos ? html.size() : end + 1;
    raw += ' ';
  }

  static const std::pair<std::string_view, char> entities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'}, {"&quot;", '"'}, {"&#39;", '\''}, {"&nbsp;", ' '}};
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    char c = raw[i];
    std::size_t width = 1;
    if (c == '&') {
      for (const auto& [name, decoded] : entities) {
        if (raw.compare(i, name.size(), name) == 0) {
          c = decoded;
          width = name.size();
          break;
        }
      }
    }
    i += width;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != ' ') out += ' ';
    } else {
      out += c;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

HttpSearchClient::HttpSearchClient(LiveSearchConfig config, HttpGet get)
    : config_(std::move(config)),
      get_(get ? std::move(get) : HttpGet([](const std::string& url) { return net::get(url); })),
      limiter_(config_.rate_limit_per_sec) {
  if (config_.api_key.empty()) throw std::invalid_argument("search client needs an API key");
}

std::vector<SearchResult> HttpSearchClient::search(const std::string& query) {
  std::string url = config_.endpoint + (config_.endpoint.find('?') == std::string::npos ? "?" : "&");
  url += "key=" + net::url_encode(config_.api_key);
  if (!config_.engine_id.empty()) url += "&cx=" + net::url_encode(config_.engine_id);
  url += "&num=5&q=" + net::url_encode(query);

  limiter_.wait();
  const auto response = get_(url);
  if (response.status < 200 || response.status >= 300) {
    throw std::runtime_error("search endpoint returned HTTP " + std::to_string(response.status));
  }
  auto results = parse_search_response(response.body);
  if (!config_.fetch_pages) return results;

  for (auto& r : results) {
    try {
      limiter_.wait();
      const auto page = get_(r.url);
      if (page.status >= 200 && page.status < 300) {
        auto text = html_to_text(page.body);
        if (!text.empty()) r.text = std::move(text);
      }
    } catch (const std::exception&) {
      // Keep the snippet.
    }
  }
  return results;
}

std::string build_chat_request(const std::string& model, const std::string& prompt) {
  json req{{"model", model},
           {"temperature", 0},
           {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
  return req.dump();
}

std::string parse_chat_response(std::string_view body) {
  const auto doc = json::parse(body, nullptr, false);
  if (doc.is_discarded()) throw std::runtime_error("chat response is not JSON");
  try {
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception&) {
    throw std::runtime_error("chat response lacks choices[0].message.content");
  }
}

HttpLlmClient::HttpLlmClient(LiveLlmConfig config, HttpPost post)
    : config_(std::move(config)),
      post_(post ? std::move(post)
                 : HttpPost([](const std::string& url, const std::string& body,
                               const net::Headers& headers) {
                     return net::post(url, body, "application/json", headers);
                   })) {
  if (config_.api_key.empty() || config_.model.empty()) {
    throw std::invalid_argument("LLM client needs an API key and a model");
  }
}

std::string HttpLlmClient::complete(const std::string& prompt) {
  const auto response = post_(config_.endpoint, build_chat_request(config_.model, prompt),
                              {{"Authorization", "Bearer " + config_.api_key}});
  if (response.status < 200 || response.status >= 300) {
    throw std::runtime_error("LLM endpoint returned HTTP " + std::to_string(response.status));
  }
  return parse_chat_response(response.body);
}

}  // namespace interlock
