#include "interlock/http_provider.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace interlock {

namespace fs = std::filesystem;

namespace {

std::string expand(const std::string& tmpl, const std::string& id) {
  std::string out = tmpl;
  const auto pos = out.find("{id}");
  if (pos == std::string::npos) throw std::invalid_argument("URL template lacks {id}: " + tmpl);
  out.replace(pos, 4, net::url_encode(id));
  return out;
}

// File-system safe cache key for an identifier.
std::string cache_name(const std::string& id) {
  std::string out;
  for (unsigned char c : id) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      out.push_back(static_cast<char>(c));
    } else {
      static constexpr char hex[] = "0123456789ABCDEF";
      out += '%';
      out += hex[c >> 4];
      out += hex[c & 0xF];
    }
  }
  return out + ".html";
}

std::string first_capture(const std::regex& re, const std::string& body) {
  std::smatch m;
  if (std::regex_search(body, m, re) && m.size() > 1) return m[1].str();
  return {};
}

std::vector<std::string> all_captures(const std::regex& re, const std::string& body) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (auto it = std::sregex_iterator(body.begin(), body.end(), re); it != std::sregex_iterator();
       ++it) {
    if (it->size() < 2) continue;
    auto value = (*it)[1].str();
    if (!value.empty() && seen.insert(value).second) out.push_back(std::move(value));
  }
  return out;
}

}  // namespace

HttpPageProvider::HttpPageProvider(HttpProviderConfig config, Fetcher fetcher)
    : config_(std::move(config)),
      fetcher_(fetcher ? std::move(fetcher) : Fetcher([](const std::string& url) {
        return net::get(url);
      })),
      limiter_(config_.rate_limit_per_sec),
      company_name_(config_.company_name_pattern),
      director_name_(config_.director_name_pattern),
      director_link_(config_.director_link_pattern),
      company_link_(config_.company_link_pattern) {}

std::pair<std::string, std::string> HttpPageProvider::load(NodeKind kind, const std::string& id) {
  const auto url = expand(
      kind == NodeKind::company ? config_.company_url_template : config_.director_url_template, id);

  std::optional<fs::path> cached;
  if (config_.cache_dir) {
    cached = *config_.cache_dir / std::string(to_string(kind)) / cache_name(id);
    if (fs::exists(*cached)) {
      std::ifstream in(*cached, std::ios::binary);
      std::ostringstream body;
      body << in.rdbuf();
      return {url, body.str()};
    }
  }

  limiter_.wait();
  ++network_fetches_;
  auto response = fetcher_(url);
  if (response.status == 404) throw NotFoundError({kind, id});
  if (response.status < 200 || response.status >= 300) {
    throw std::runtime_error("HTTP " + std::to_string(response.status) + " for " + url);
  }

  if (cached) {
    fs::create_directories(cached->parent_path());
    const auto tmp = fs::path(cached->string() + ".tmp");
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << response.body;
    }
    fs::rename(tmp, *cached);
  }
  return {url, std::move(response.body)};
}

CompanyPage HttpPageProvider::fetch_company(const std::string& cin) {
  auto [url, body] = load(NodeKind::company, cin);
  return {cin, first_capture(company_name_, body), url, all_captures(director_link_, body)};
}

DirectorPage HttpPageProvider::fetch_director(const std::string& din) {
  auto [url, body] = load(NodeKind::director, din);
  return {din, first_capture(director_name_, body), url, all_captures(company_link_, body)};
}

}  // namespace interlock
