#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "interlock/live_clients.hpp"

using namespace interlock;

TEST(LiveSearch, ParsesItems) {
  const auto results = parse_search_response(R"({"items": [
      {"link": "https://a.example", "snippet": "first"},
      {"title": "no link"},
      {"link": "https://b.example"}]})");
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].url, "https://a.example");
  EXPECT_EQ(results[0].text, "first");
  EXPECT_EQ(results[1].text, "");
  EXPECT_TRUE(parse_search_response("{}").empty());
  EXPECT_THROW(parse_search_response("<html>"), std::runtime_error);
}

TEST(LiveSearch, CapsAtFive) {
  nlohmann::json doc;
  for (int i = 0; i < 9; ++i) {
    doc["items"].push_back({{"link", "https://x.example/" + std::to_string(i)}, {"snippet", "s"}});
  }
  EXPECT_EQ(parse_search_response(doc.dump()).size(), 5u);
}

TEST(LiveSearch, BuildsRequestAndFetchesPages) {
  std::vector<std::string> urls;
  LiveSearchConfig config;
  config.api_key = "k&y";
  config.engine_id = "cx1";
  config.rate_limit_per_sec = 0;
  HttpSearchClient client(config, [&](const std::string& url) -> net::Response {
    urls.push_back(url);
    if (url.rfind(config.endpoint, 0) == 0) {
      return {200, R"({"items": [{"link": "https://page.example/1", "snippet": "snip"},
                                 {"link": "https://page.example/2", "snippet": "keep me"}]})"};
    }
    if (url == "https://page.example/1") {
      return {200, "<html><script>var x;</script><p>Full &amp; text</p></html>"};
    }
    return {500, ""};
  });
  const auto results = client.search("\"A\", \"B\"");
  ASSERT_EQ(results.size(), 2u);
  EXPECT_EQ(results[0].text, "Full & text");
  EXPECT_EQ(results[1].text, "keep me");
  ASSERT_EQ(urls.size(), 3u);
  EXPECT_NE(urls[0].find("key=k%26y"), std::string::npos) << urls[0];
  EXPECT_NE(urls[0].find("cx=cx1"), std::string::npos);
  EXPECT_EQ(urls[0].find(' '), std::string::npos);
}

TEST(LiveSearch, HttpErrorThrows) {
  LiveSearchConfig config;
  config.api_key = "k";
  config.rate_limit_per_sec = 0;
  HttpSearchClient client(config, [](const std::string&) { return net::Response{403, ""}; });
  EXPECT_THROW(client.search("q"), std::runtime_error);
  EXPECT_THROW(HttpSearchClient(LiveSearchConfig{}), std::invalid_argument);
}

TEST(HtmlToText, StripsMarkup) {
  EXPECT_EQ(html_to_text("<div>a<br/>b</div>\n\n<style>.x{}</style>c &lt;d&gt;"), "a b c <d>");
  EXPECT_EQ(html_to_text("plain"), "plain");
  EXPECT_EQ(html_to_text("<SCRIPT>bad()</SCRIPT>ok"), "ok");
}

TEST(LiveLlm, RequestAndResponse) {
  const auto req = nlohmann::json::parse(build_chat_request("m1", "hello"));
  EXPECT_EQ(req["model"], "m1");
  EXPECT_EQ(req["messages"][0]["content"], "hello");
  EXPECT_EQ(req["temperature"], 0);

  EXPECT_EQ(parse_chat_response(R"({"choices": [{"message": {"content": "{\"Relation\": \"x\"}"}}]})"),
            R"({"Relation": "x"})");
  EXPECT_THROW(parse_chat_response(R"({"choices": []})"), std::runtime_error);
  EXPECT_THROW(parse_chat_response("oops"), std::runtime_error);
}

TEST(LiveLlm, SendsBearerToken) {
  LiveLlmConfig config{"https://llm.example/v1/chat/completions", "secret", "m"};
  net::Headers seen;
  HttpLlmClient client(config, [&](const std::string&, const std::string&, const net::Headers& h) {
    seen = h;
    return net::Response{200, R"({"choices": [{"message": {"content": "ok"}}]})"};
  });
  EXPECT_EQ(client.complete("p"), "ok");
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0].second, "Bearer secret");
  EXPECT_THROW(HttpLlmClient(LiveLlmConfig{"u", "", "m"}), std::invalid_argument);
}

TEST(LiveCredentials, ReportsMissing) {
  ::unsetenv(kSearchKeyEnv);
  ::setenv(kLlmKeyEnv, "x", 1);
  ::setenv(kLlmModelEnv, "", 1);
  std::vector<std::string> missing;
  const auto c = credentials_from_env(missing);
  EXPECT_EQ(missing, (std::vector<std::string>{kSearchKeyEnv, kLlmModelEnv}));
  EXPECT_EQ(c.llm_api_key, "x");
  ::unsetenv(kLlmKeyEnv);
  ::unsetenv(kLlmModelEnv);
}
