#include "interlock/replay.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <nlohmann/json.hpp>

namespace interlock {

using json = nlohmann::json;

std::string prompt_hash(std::string_view prompt) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(prompt.data(), prompt.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

namespace {

// Calls f(json) for each non-blank line; errors carry file:line.
template <typename F>
void read_jsonl(const std::filesystem::path& path, F&& f) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open replay file " + path.string());
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = path.string() + ":" + std::to_string(n);
    auto doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw std::runtime_error(where + ": not a JSON object");
    try {
      f(doc);
    } catch (const json::exception& e) {
      throw std::runtime_error(where + ": " + e.what());
    }
  }
}

void append_line(const std::filesystem::path& file, const json& doc) {
  std::ofstream out(file, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot append to " + file.string());
  out << doc.dump() << '\n';
}

std::filesystem::path prepare(const std::filesystem::path& dir, const char* name) {
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

ReplaySearchClient::ReplaySearchClient(const std::filesystem::path& dir) {
  read_jsonl(dir / kReplaySearchFile, [&](const json& doc) {
    std::vector<SearchResult> results;
    for (const auto& r : doc.at("results")) {
      results.push_back({r.at("url").get<std::string>(), r.at("text").get<std::string>()});
    }
    results_[doc.at("query").get<std::string>()] = std::move(results);
  });
}

std::vector<SearchResult> ReplaySearchClient::search(const std::string& query) {
  auto it = results_.find(query);
  if (it == results_.end()) throw ReplayMiss("no recorded results for query " + query);
  return it->second;
}

ReplayAnalysisClient::ReplayAnalysisClient(const std::filesystem::path& dir) {
  read_jsonl(dir / kReplayResponseFile, [&](const json& doc) {
    responses_[doc.at("prompt_sha256").get<std::string>()] = doc.at("response").get<std::string>();
  });
}

std::string ReplayAnalysisClient::complete(const std::string& prompt) {
  const auto key = prompt_hash(prompt);
  auto it = responses_.find(key);
  if (it == responses_.end()) throw ReplayMiss("no recorded response for prompt " + key);
  return it->second;
}

RecordingSearchClient::RecordingSearchClient(SearchClient& inner, std::filesystem::path dir)
    : inner_(inner), file_(prepare(dir, kReplaySearchFile)) {}

std::vector<SearchResult> RecordingSearchClient::search(const std::string& query) {
  auto results = inner_.search(query);
  json doc{{"query", query}, {"results", json::array()}};
  for (const auto& r : results) doc["results"].push_back({{"url", r.url}, {"text", r.text}});
  append_line(file_, doc);
  return results;
}

RecordingAnalysisClient::RecordingAnalysisClient(TextAnalysisClient& inner,
                                                 std::filesystem::path dir)
    : inner_(inner), file_(prepare(dir, kReplayResponseFile)) {}

std::string RecordingAnalysisClient::complete(const std::string& prompt) {
  auto response = inner_.complete(prompt);
  append_line(file_, json{{"prompt_sha256", prompt_hash(prompt)}, {"response", response}});
  return response;
}

}  // namespace interlock
