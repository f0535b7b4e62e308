#include "interlock/cliques.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <set>
#include <stdexcept>

namespace interlock {

namespace {

using IndexSet = std::vector<NodeIndex>;  // always sorted

IndexSet intersect(const IndexSet& a, std::span<const NodeIndex> b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t intersection_size(const IndexSet& a, std::span<const NodeIndex> b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

class BronKerbosch {
 public:
  BronKerbosch(const ProjectionGraph& g, std::size_t min_size) : g_(g), min_size_(min_size) {}

  void expand(IndexSet& r, IndexSet p, IndexSet x) {
    if (p.empty()) {
      if (x.empty() && r.size() >= min_size_) found_.push_back(r);
      return;
    }
    if (r.size() + p.size() < min_size_) return;

    // Tomita pivot: maximize |N(u) & P| over P u X, smallest index on ties.
    NodeIndex pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    auto consider = [&](NodeIndex u) {
      const auto n = intersection_size(p, g_.neighbors(u));
      if (!have_pivot || n > best || (n == best && u < pivot)) {
        pivot = u;
        best = n;
        have_pivot = true;
      }
    };
    for (NodeIndex u : p) consider(u);
    for (NodeIndex u : x) consider(u);

    IndexSet candidates;
    const auto pivot_neighbors = g_.neighbors(pivot);
    std::set_difference(p.begin(), p.end(), pivot_neighbors.begin(), pivot_neighbors.end(),
                        std::back_inserter(candidates));

    for (NodeIndex v : candidates) {
      const auto nv = g_.neighbors(v);
      r.push_back(v);
      expand(r, intersect(p, nv), intersect(x, nv));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  std::vector<IndexSet> take() { return std::move(found_); }

 private:
  const ProjectionGraph& g_;
  std::size_t min_size_;
  std::vector<IndexSet> found_;
};

// Matula-Beck smallest-last ordering; ties resolved by index.
std::vector<NodeIndex> degeneracy_order(const ProjectionGraph& g) {
  const std::size_t n = g.size();
  std::vector<std::size_t> degree(n);
  std::set<std::pair<std::size_t, NodeIndex>> queue;
  for (NodeIndex v = 0; v < n; ++v) {
    degree[v] = g.neighbors(v).size();
    queue.emplace(degree[v], v);
  }
  std::vector<bool> removed(n, false);
  std::vector<NodeIndex> order;
  order.reserve(n);
  while (!queue.empty()) {
    const auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    removed[v] = true;
    order.push_back(v);
    for (NodeIndex w : g.neighbors(v)) {
      if (removed[w]) continue;
      queue.erase({degree[w], w});
      queue.emplace(--degree[w], w);
    }
  }
  return order;
}

MaximalClique describe(const ProjectionGraph& g, const IndexSet& members) {
  MaximalClique c;
  c.members.reserve(members.size());
  for (NodeIndex m : members) c.members.push_back(g.id(m));

  std::set<std::string> all;
  std::vector<std::string> common;
  bool first = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const auto& shared = g.edge(members[i], members[j])->shared;
      all.insert(shared.begin(), shared.end());
      if (first) {
        common = shared;
        first = false;
      } else {
        std::vector<std::string> next;
        std::set_intersection(common.begin(), common.end(), shared.begin(), shared.end(),
                              std::back_inserter(next));
        common = std::move(next);
      }
    }
  }
  c.shared_intersection = std::move(common);
  c.shared_union.assign(all.begin(), all.end());
  return c;
}

std::vector<MaximalClique> finish(const ProjectionGraph& g, std::vector<IndexSet> found) {
  std::vector<MaximalClique> out;
  out.reserve(found.size());
  for (auto& members : found) {
    std::sort(members.begin(), members.end());
    out.push_back(describe(g, members));
  }
  std::sort(out.begin(), out.end(), [](const MaximalClique& a, const MaximalClique& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.members < b.members;
  });
  return out;
}

void check_min_size(std::size_t min_size) {
  if (min_size < 2) throw std::invalid_argument("clique min_size must be >= 2");
}

}  // namespace

EgoNetwork ego_network(const ProjectionGraph& projection, const std::string& base,
                       std::size_t radius) {
  if (radius < 1) throw std::invalid_argument("ego network radius must be >= 1");
  const auto start = projection.find(base);
  if (!start) throw std::out_of_range("unknown " + std::string(to_string(projection.mode())) +
                                      " \"" + base + "\"");

  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(projection.size(), kInf);
  std::deque<NodeIndex> queue{*start};
  std::vector<NodeIndex> within{*start};
  dist[*start] = 0;
  while (!queue.empty()) {
    const NodeIndex v = queue.front();
    queue.pop_front();
    if (dist[v] == radius) continue;
    for (NodeIndex w : projection.neighbors(v)) {
      if (dist[w] != kInf) continue;
      dist[w] = dist[v] + 1;
      within.push_back(w);
      queue.push_back(w);
    }
  }
  return {base, radius, projection.induced(within)};
}

std::vector<MaximalClique> maximal_cliques(const ProjectionGraph& projection, std::size_t min_size,
                                           CliqueStrategy strategy) {
  check_min_size(min_size);
  if (strategy == CliqueStrategy::automatic) {
    strategy = projection.size() > kDegeneracyThreshold ? CliqueStrategy::degeneracy
                                                        : CliqueStrategy::pivot;
  }

  BronKerbosch bk(projection, min_size);
  IndexSet r;
  if (strategy == CliqueStrategy::pivot) {
    IndexSet all(projection.size());
    for (NodeIndex i = 0; i < all.size(); ++i) all[i] = i;
    bk.expand(r, std::move(all), {});
  } else {
    const auto order = degeneracy_order(projection);
    std::vector<std::size_t> position(projection.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    for (NodeIndex v : order) {
      IndexSet later, earlier;
      for (NodeIndex w : projection.neighbors(v)) {
        (position[w] > position[v] ? later : earlier).push_back(w);
      }
      r.assign(1, v);
      bk.expand(r, std::move(later), std::move(earlier));
    }
  }
  return finish(projection, bk.take());
}

std::vector<MaximalClique> maximal_cliques_containing(const ProjectionGraph& projection,
                                                      const std::string& base,
                                                      std::size_t min_size) {
  check_min_size(min_size);
  const auto b = projection.find(base);
  if (!b) throw std::out_of_range("unknown " + std::string(to_string(projection.mode())) + " \"" +
                                  base + "\"");
  BronKerbosch bk(projection, min_size);
  IndexSet r{*b};
  const auto nb = projection.neighbors(*b);
  bk.expand(r, IndexSet(nb.begin(), nb.end()), {});
  return finish(projection, bk.take());
}

CliqueStats clique_stats(const CorporateGraph& graph, const ProjectionGraph& projection,
                         const std::string& base, std::size_t radius, std::size_t min_size) {
  check_min_size(min_size);
  const auto ego = ego_network(projection, base, radius);

  CliqueStats stats;
  stats.mode = projection.mode();
  stats.base = base;
  stats.radius = radius;
  stats.min_size = min_size;
  stats.neighborhood_same = ego.subgraph.size();

  const NodeKind mode = projection.mode();
  std::vector<bool> touched(graph.size(opposite(mode)), false);
  for (const auto& id : ego.subgraph.ids()) {
    for (NodeIndex e : graph.neighbors(mode, graph.index_of(mode, id))) {
      if (!touched[e]) {
        touched[e] = true;
        ++stats.neighborhood_opposite;
      }
    }
  }

  stats.cliques = maximal_cliques_containing(ego.subgraph, base, min_size);
  stats.clique_count = stats.cliques.size();
  if (stats.cliques.empty()) return stats;

  std::size_t total = 0;
  for (const auto& c : stats.cliques) total += c.size();
  stats.mean_size = static_cast<double>(total) / static_cast<double>(stats.cliques.size());

  auto summary = [](const MaximalClique& c) {
    return CliqueSummary{c.size(), c.shared_intersection.size(), c.members};
  };
  // `better(a, b)` true when a should be chosen over b; member order breaks ties.
  auto pick = [&](auto better) {
    const MaximalClique* best = &stats.cliques.front();
    for (const auto& c : stats.cliques) {
      if (better(c, *best) || (!better(*best, c) && c.members < best->members)) best = &c;
    }
    return summary(*best);
  };
  auto shared = [](const MaximalClique& c) { return c.shared_intersection.size(); };

  stats.largest = pick([&](const MaximalClique& a, const MaximalClique& b) {
    return a.size() != b.size() ? a.size() > b.size() : shared(a) > shared(b);
  });
  stats.smallest = pick([&](const MaximalClique& a, const MaximalClique& b) {
    return a.size() != b.size() ? a.size() < b.size() : shared(a) > shared(b);
  });
  stats.most_shared = pick([&](const MaximalClique& a, const MaximalClique& b) {
    return shared(a) != shared(b) ? shared(a) > shared(b) : a.size() < b.size();
  });
  stats.least_shared = pick([&](const MaximalClique& a, const MaximalClique& b) {
    return shared(a) != shared(b) ? shared(a) < shared(b) : a.size() > b.size();
  });
  return stats;
}

}  // namespace interlock
