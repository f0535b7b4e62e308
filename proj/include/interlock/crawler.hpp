#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "interlock/model.hpp"

namespace interlock {

struct CompanyPage {
  std::string cin;
  std::string name;
  std::string url;
  std::vector<std::string> director_links;  // dins, in page order
};

struct DirectorPage {
  std::string din;
  std::string name;
  std::string url;
  std::vector<std::string> company_links;  // cins, in page order
};

// The requested page does not exist. Not retried.
class NotFoundError : public std::runtime_error {
 public:
  explicit NotFoundError(NodeRef node)
      : std::runtime_error("no " + std::string(to_string(node.kind)) + " page for \"" +
                           node.id + "\""),
        node_(std::move(node)) {}
  const NodeRef& node() const { return node_; }

 private:
  NodeRef node_;
};

// A fetch kept failing after all retries.
class FetchError : public std::runtime_error {
 public:
  FetchError(NodeRef node, int attempts, const std::string& cause)
      : std::runtime_error("fetching " + std::string(to_string(node.kind)) + " \"" + node.id +
                           "\" failed after " + std::to_string(attempts) +
                           " attempt(s): " + cause),
        node_(std::move(node)),
        attempts_(attempts) {}
  const NodeRef& node() const { return node_; }
  int attempts() const { return attempts_; }

 private:
  NodeRef node_;
  int attempts_;
};

// Source of company and director pages. Implementations must return
// equivalent pages for repeated fetches within one crawl. Transient
// failures are reported by throwing any std::exception other than
// NotFoundError.
class PageProvider {
 public:
  virtual ~PageProvider() = default;
  virtual CompanyPage fetch_company(const std::string& cin) = 0;
  virtual DirectorPage fetch_director(const std::string& din) = 0;
};

struct CrawlConfig {
  NodeRef base;
  std::optional<std::size_t> max_nodes;
  // Bipartite hops from the base: company -> director is one hop.
  std::optional<std::size_t> max_depth;
  // Extra attempts after the first failed fetch of a page.
  int retries = 2;
};

struct CrawlResult {
  BipartiteDataset dataset;
  // A node limit or the depth limit left reachable nodes unvisited.
  bool truncated = false;
  std::size_t depth_reached = 0;
  std::size_t pages_fetched = 0;
};

// Breadth-first traversal from config.base. Pages are fetched in FIFO
// order, each node at most once; within a level nodes appear in the order
// their links were seen. Companies and directors are recorded in fetch
// order; affiliations in the order links were observed, deduplicated, and
// restricted to pairs whose both endpoints were fetched.
//
// Throws NotFoundError if the base (or any linked page) is missing and
// FetchError when retries are exhausted; no partial dataset is returned.
CrawlResult bfs_crawl(PageProvider& provider, const CrawlConfig& config);

// Serves pages synthesized from a dataset. Link order follows the
// affiliation order of the dataset.
class FixtureProvider : public PageProvider {
 public:
  explicit FixtureProvider(BipartiteDataset dataset);

  CompanyPage fetch_company(const std::string& cin) override;
  DirectorPage fetch_director(const std::string& din) override;

 private:
  BipartiteDataset dataset_;
  std::unordered_map<std::string, std::size_t> company_index_;
  std::unordered_map<std::string, std::size_t> director_index_;
  std::vector<std::vector<std::string>> company_links_;
  std::vector<std::vector<std::string>> director_links_;
};

std::unique_ptr<PageProvider> fixture_provider(BipartiteDataset dataset);

// Forwards to another provider and counts fetches per node.
class CountingProvider : public PageProvider {
 public:
  explicit CountingProvider(PageProvider& inner) : inner_(inner) {}

  CompanyPage fetch_company(const std::string& cin) override;
  DirectorPage fetch_director(const std::string& din) override;

  const std::map<NodeRef, int>& counts() const { return counts_; }
  int max_count() const;

 private:
  PageProvider& inner_;
  std::map<NodeRef, int> counts_;
};

}  // namespace interlock
