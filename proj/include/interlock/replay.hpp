#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "interlock/relations.hpp"

namespace interlock {

// Replay fixtures live in one directory:
//   searches.jsonl   {"query": "...", "results": [{"url": "...", "text": "..."}]}
//   responses.jsonl  {"prompt_sha256": "<hex>", "response": "..."}
// Later lines override earlier ones with the same key.
inline constexpr const char* kReplaySearchFile = "searches.jsonl";
inline constexpr const char* kReplayResponseFile = "responses.jsonl";

// Lower-case hex SHA-256 of the prompt bytes.
std::string prompt_hash(std::string_view prompt);

// Raised for a query or prompt with no recorded entry.
class ReplayMiss : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ReplaySearchClient : public SearchClient {
 public:
  explicit ReplaySearchClient(const std::filesystem::path& dir);
  std::vector<SearchResult> search(const std::string& query) override;
  std::size_t size() const { return results_.size(); }

 private:
  std::map<std::string, std::vector<SearchResult>> results_;
};

class ReplayAnalysisClient : public TextAnalysisClient {
 public:
  explicit ReplayAnalysisClient(const std::filesystem::path& dir);
  std::string complete(const std::string& prompt) override;
  std::size_t size() const { return responses_.size(); }

 private:
  std::map<std::string, std::string> responses_;
};

// Pass-through clients that append every successful call to a fixture
// directory, producing files ReplaySearchClient/ReplayAnalysisClient read.
class RecordingSearchClient : public SearchClient {
 public:
  RecordingSearchClient(SearchClient& inner, std::filesystem::path dir);
  std::vector<SearchResult> search(const std::string& query) override;

 private:
  SearchClient& inner_;
  std::filesystem::path file_;
};

class RecordingAnalysisClient : public TextAnalysisClient {
 public:
  RecordingAnalysisClient(TextAnalysisClient& inner, std::filesystem::path dir);
  std::string complete(const std::string& prompt) override;

 private:
  TextAnalysisClient& inner_;
  std::filesystem::path file_;
};

}  // namespace interlock
