#include <gtest/gtest.h>

#include "interlock/http_provider.hpp"
#include "temp_dir.hpp"

using namespace interlock;

namespace {

HttpProviderConfig site_config() {
  HttpProviderConfig c;
  c.company_url_template = "https://registry.example/company/{id}";
  c.director_url_template = "https://registry.example/director/{id}";
  c.company_name_pattern = "<h1>([^<]+)</h1>";
  c.director_name_pattern = "<h1>([^<]+)</h1>";
  c.director_link_pattern = "href=\"/director/([^\"]+)\"";
  c.company_link_pattern = "href=\"/company/([^\"]+)\"";
  c.rate_limit_per_sec = 0;
  return c;
}

std::map<std::string, std::string> site() {
  return {
      {"https://registry.example/company/A",
       "<h1>Company A</h1><a href=\"/director/1\">One</a><a href=\"/director/2\">Two</a>"
       "<a href=\"/director/1\">again</a>"},
      {"https://registry.example/director/1", "<h1>Director One</h1><a href=\"/company/A\">A</a>"},
      {"https://registry.example/director/2", "<h1>Director Two</h1><a href=\"/company/A\">A</a>"},
  };
}

}  // namespace

TEST(HttpProvider, ParsesPagesWithPatterns) {
  const auto pages = site();
  std::vector<std::string> requested;
  HttpPageProvider provider(site_config(), [&](const std::string& url) {
    requested.push_back(url);
    auto it = pages.find(url);
    return it == pages.end() ? net::Response{404, ""} : net::Response{200, it->second};
  });

  const auto a = provider.fetch_company("A");
  EXPECT_EQ(a.cin, "A");
  EXPECT_EQ(a.name, "Company A");
  EXPECT_EQ(a.url, "https://registry.example/company/A");
  EXPECT_EQ(a.director_links, (std::vector<std::string>{"1", "2"}));

  const auto one = provider.fetch_director("1");
  EXPECT_EQ(one.company_links, (std::vector<std::string>{"A"}));
  EXPECT_THROW(provider.fetch_director("9"), NotFoundError);
  EXPECT_EQ(provider.network_fetches(), 3u);
}

TEST(HttpProvider, ServerErrorsAreRetryable) {
  HttpPageProvider provider(site_config(),
                            [](const std::string&) { return net::Response{503, "busy"}; });
  try {
    provider.fetch_company("A");
    FAIL();
  } catch (const NotFoundError&) {
    FAIL() << "503 must not map to NotFoundError";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("503"), std::string::npos);
  }
}

TEST(HttpProvider, CacheAvoidsRepeatFetches) {
  testing_support::TempDir dir;
  const auto pages = site();
  auto config = site_config();
  config.cache_dir = dir.path();
  int calls = 0;
  auto fetch = [&](const std::string& url) {
    ++calls;
    return net::Response{200, pages.at(url)};
  };
  {
    HttpPageProvider provider(config, fetch);
    provider.fetch_company("A");
  }
  HttpPageProvider again(config, fetch);
  const auto a = again.fetch_company("A");
  EXPECT_EQ(calls, 1);
  EXPECT_EQ(again.network_fetches(), 0u);
  EXPECT_EQ(a.director_links.size(), 2u);
}

TEST(HttpProvider, IdentifiersAreUrlEncoded) {
  std::string seen;
  HttpPageProvider provider(site_config(), [&](const std::string& url) {
    seen = url;
    return net::Response{200, "<h1>x</h1>"};
  });
  provider.fetch_company("A B/C");
  EXPECT_EQ(seen.find(' '), std::string::npos);
  EXPECT_EQ(seen.rfind("https://registry.example/company/", 0), 0u);
}

TEST(RateLimiter, SpacesCalls) {
  net::RateLimiter limiter(50.0);
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 4; ++i) limiter.wait();
  EXPECT_GE(std::chrono::steady_clock::now() - start, std::chrono::milliseconds(55));
}
