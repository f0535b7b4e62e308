#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

namespace interlock::net {

struct Response {
  int status = 0;
  std::string body;
};

using Headers = std::vector<std::pair<std::string, std::string>>;

// Blocking HTTP(S) requests against absolute URLs. Throws std::runtime_error
// on connection failure; non-2xx statuses are returned, not thrown.
Response get(const std::string& url, const Headers& headers = {});
Response post(const std::string& url, const std::string& body, const std::string& content_type,
              const Headers& headers = {});

std::string url_encode(const std::string& text);

// Spaces successive calls to wait() at least 1/rate seconds apart.
// A non-positive rate disables limiting.
class RateLimiter {
 public:
  explicit RateLimiter(double per_second);
  void wait();

 private:
  std::chrono::steady_clock::duration interval_{};
  std::chrono::steady_clock::time_point next_{};
};

}  // namespace interlock::net
