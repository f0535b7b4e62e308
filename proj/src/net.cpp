#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "interlock/net.hpp"

#include <httplib.h>

#include <stdexcept>
#include <thread>

namespace interlock::net {

namespace {

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw std::invalid_argument("not an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

httplib::Headers to_httplib(const Headers& headers) {
  httplib::Headers out;
  for (const auto& [k, v] : headers) out.emplace(k, v);
  return out;
}

Response finish(const httplib::Result& result, const std::string& url) {
  if (!result) {
    throw std::runtime_error("request to " + url + " failed: " + httplib::to_string(result.error()));
  }
  return {result->status, result->body};
}

}  // namespace

Response get(const std::string& url, const Headers& headers) {
  auto [origin, path] = split_url(url);
  httplib::Client client(origin);
  client.set_follow_location(true);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  return finish(client.Get(path, to_httplib(headers)), url);
}

Response post(const std::string& url, const std::string& body, const std::string& content_type,
              const Headers& headers) {
  auto [origin, path] = split_url(url);
  httplib::Client client(origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(120);
  return finish(client.Post(path, to_httplib(headers), body, content_type), url);
}

std::string url_encode(const std::string& text) {
  return httplib::detail::encode_query_param(text);
}

RateLimiter::RateLimiter(double per_second) {
  if (per_second > 0) {
    interval_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / per_second));
  }
}

void RateLimiter::wait() {
  if (interval_ == std::chrono::steady_clock::duration::zero()) return;
  const auto now = std::chrono::steady_clock::now();
  if (now < next_) std::this_thread::sleep_until(next_);
  next_ = std::max(now, next_) + interval_;
}

}  // namespace interlock::net
