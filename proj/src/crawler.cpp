#include "interlock/crawler.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

namespace interlock {

namespace {

template <typename Fetch>
auto fetch_with_retry(const NodeRef& node, int retries, Fetch&& fetch) {
  int attempts = 0;
  while (true) {
    ++attempts;
    try {
      return fetch();
    } catch (const NotFoundError&) {
      throw;
    } catch (const std::exception& e) {
      if (attempts > retries) throw FetchError(node, attempts, e.what());
    }
  }
}

struct FrontierEntry {
  NodeKind kind;
  std::string id;
  std::size_t depth;
};

class Frontier {
 public:
  Frontier(const CrawlConfig& config) : config_(config) {}

  // Visited is checked (and updated) at enqueue time.
  void offer(NodeKind kind, const std::string& id, std::size_t depth) {
    auto& seen = kind == NodeKind::company ? companies_ : directors_;
    if (seen.contains(id)) return;
    if (config_.max_depth && depth > *config_.max_depth) {
      truncated_ = true;
      return;
    }
    if (config_.max_nodes && visited_count() >= *config_.max_nodes) {
      truncated_ = true;
      return;
    }
    seen.insert(id);
    queue_.push_back({kind, id, depth});
  }

  bool empty() const { return queue_.empty(); }
  FrontierEntry pop() {
    auto e = std::move(queue_.front());
    queue_.pop_front();
    return e;
  }
  bool truncated() const { return truncated_; }
  std::size_t visited_count() const { return companies_.size() + directors_.size(); }

 private:
  const CrawlConfig& config_;
  std::deque<FrontierEntry> queue_;
  std::unordered_set<std::string> companies_;
  std::unordered_set<std::string> directors_;
  bool truncated_ = false;
};

}  // namespace

CrawlResult bfs_crawl(PageProvider& provider, const CrawlConfig& config) {
  if (config.base.id.empty()) throw std::invalid_argument("crawl base identifier is empty");
  if (config.max_nodes && *config.max_nodes == 0) {
    throw std::invalid_argument("max_nodes must be positive");
  }
  if (config.retries < 0) throw std::invalid_argument("retries must be non-negative");

  CrawlResult result;
  Frontier frontier(config);
  frontier.offer(config.base.kind, config.base.id, 0);

  std::unordered_set<std::string> fetched_companies;
  std::unordered_set<std::string> fetched_directors;
  std::vector<AffiliationRecord> observed;
  std::set<std::pair<std::string, std::string>> observed_set;
  auto observe = [&](const std::string& cin, const std::string& din) {
    if (observed_set.emplace(cin, din).second) observed.push_back({cin, din});
  };

  while (!frontier.empty()) {
    const FrontierEntry entry = frontier.pop();
    const NodeRef node{entry.kind, entry.id};
    result.depth_reached = std::max(result.depth_reached, entry.depth);
    ++result.pages_fetched;

    if (entry.kind == NodeKind::company) {
      auto page = fetch_with_retry(node, config.retries,
                                   [&] { return provider.fetch_company(entry.id); });
      if (page.cin != entry.id) {
        throw FetchError(node, 1, "page reports cin \"" + page.cin + "\"");
      }
      result.dataset.companies.push_back({page.cin, page.name, page.url});
      fetched_companies.insert(page.cin);
      for (const auto& din : page.director_links) {
        if (din.empty()) continue;
        observe(page.cin, din);
        frontier.offer(NodeKind::director, din, entry.depth + 1);
      }
    } else {
      auto page = fetch_with_retry(node, config.retries,
                                   [&] { return provider.fetch_director(entry.id); });
      if (page.din != entry.id) {
        throw FetchError(node, 1, "page reports din \"" + page.din + "\"");
      }
      result.dataset.directors.push_back({page.din, page.name, page.url});
      fetched_directors.insert(page.din);
      for (const auto& cin : page.company_links) {
        if (cin.empty()) continue;
        observe(cin, page.din);
        frontier.offer(NodeKind::company, cin, entry.depth + 1);
      }
    }
  }

  for (auto& a : observed) {
    if (fetched_companies.contains(a.cin) && fetched_directors.contains(a.din)) {
      result.dataset.affiliations.push_back(std::move(a));
    }
  }
  result.truncated = frontier.truncated();
  return result;
}

FixtureProvider::FixtureProvider(BipartiteDataset dataset) : dataset_(std::move(dataset)) {
  validate(dataset_);
  for (std::size_t i = 0; i < dataset_.companies.size(); ++i) {
    company_index_.emplace(dataset_.companies[i].cin, i);
  }
  for (std::size_t i = 0; i < dataset_.directors.size(); ++i) {
    director_index_.emplace(dataset_.directors[i].din, i);
  }
  company_links_.resize(dataset_.companies.size());
  director_links_.resize(dataset_.directors.size());
  for (const auto& a : dataset_.affiliations) {
    company_links_[company_index_.at(a.cin)].push_back(a.din);
    director_links_[director_index_.at(a.din)].push_back(a.cin);
  }
}

CompanyPage FixtureProvider::fetch_company(const std::string& cin) {
  auto it = company_index_.find(cin);
  if (it == company_index_.end()) throw NotFoundError({NodeKind::company, cin});
  const auto& c = dataset_.companies[it->second];
  return {c.cin, c.name, c.url, company_links_[it->second]};
}

DirectorPage FixtureProvider::fetch_director(const std::string& din) {
  auto it = director_index_.find(din);
  if (it == director_index_.end()) throw NotFoundError({NodeKind::director, din});
  const auto& d = dataset_.directors[it->second];
  return {d.din, d.name, d.url, director_links_[it->second]};
}

std::unique_ptr<PageProvider> fixture_provider(BipartiteDataset dataset) {
  return std::make_unique<FixtureProvider>(std::move(dataset));
}

CompanyPage CountingProvider::fetch_company(const std::string& cin) {
  ++counts_[{NodeKind::company, cin}];
  return inner_.fetch_company(cin);
}

DirectorPage CountingProvider::fetch_director(const std::string& din) {
  ++counts_[{NodeKind::director, din}];
  return inner_.fetch_director(din);
}

int CountingProvider::max_count() const {
  int best = 0;
  for (const auto& [node, n] : counts_) best = std::max(best, n);
  return best;
}

}  // namespace interlock
