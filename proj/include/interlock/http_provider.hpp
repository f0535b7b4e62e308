#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <regex>
#include <string>

#include "interlock/crawler.hpp"
#include "interlock/net.hpp"

namespace interlock {

// How to locate and read registry pages. Templates substitute "{id}";
// every pattern is an ECMAScript regex whose first capture group is the
// value of interest.
struct HttpProviderConfig {
  std::string company_url_template;
  std::string director_url_template;
  std::string company_name_pattern;
  std::string director_name_pattern;
  std::string director_link_pattern;  // applied to company pages
  std::string company_link_pattern;   // applied to director pages
  double rate_limit_per_sec = 1.0;
  std::optional<std::filesystem::path> cache_dir;
};

// Page provider over a live site. Raw page bodies are cached at
// <cache_dir>/<kind>/<id>.html; cached pages skip the network and the rate
// limiter. A 404 maps to NotFoundError, other failures throw
// std::runtime_error so the crawler retries them.
class HttpPageProvider : public PageProvider {
 public:
  // Returns the page body for a URL. Defaults to net::get.
  using Fetcher = std::function<net::Response(const std::string& url)>;

  explicit HttpPageProvider(HttpProviderConfig config, Fetcher fetcher = {});

  CompanyPage fetch_company(const std::string& cin) override;
  DirectorPage fetch_director(const std::string& din) override;

  std::size_t network_fetches() const { return network_fetches_; }

 private:
  std::pair<std::string, std::string> load(NodeKind kind, const std::string& id);

  HttpProviderConfig config_;
  Fetcher fetcher_;
  net::RateLimiter limiter_;
  std::regex company_name_;
  std::regex director_name_;
  std::regex director_link_;
  std::regex company_link_;
  std::size_t network_fetches_ = 0;
};

}  // namespace interlock
