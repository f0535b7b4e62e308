#include "interlock/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace interlock {

CorporateGraph::CorporateGraph(const BipartiteDataset& dataset) {
  validate(dataset);

  auto index_records = [](auto&& source, auto&& id_of, std::vector<Node>& nodes,
                          std::map<std::string, NodeIndex, std::less<>>& index) {
    nodes.reserve(source.size());
    for (const auto& r : source) nodes.push_back({id_of(r), r.name});
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.id < b.id; });
    for (NodeIndex i = 0; i < nodes.size(); ++i) index.emplace(nodes[i].id, i);
  };
  index_records(dataset.companies, [](const CompanyRecord& c) { return c.cin; }, companies_,
                company_index_);
  index_records(dataset.directors, [](const DirectorRecord& d) { return d.din; }, directors_,
                director_index_);

  company_adj_.resize(companies_.size());
  director_adj_.resize(directors_.size());
  for (const auto& a : dataset.affiliations) {
    const NodeIndex c = company_index_.find(a.cin)->second;
    const NodeIndex d = director_index_.find(a.din)->second;
    company_adj_[c].push_back(d);
    director_adj_[d].push_back(c);
  }
  for (auto& n : company_adj_) std::sort(n.begin(), n.end());
  for (auto& n : director_adj_) std::sort(n.begin(), n.end());
  edges_ = dataset.affiliations.size();
}

std::optional<NodeIndex> CorporateGraph::find(NodeKind kind, const std::string& id) const {
  const auto& index = kind == NodeKind::company ? company_index_ : director_index_;
  auto it = index.find(id);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

NodeIndex CorporateGraph::index_of(NodeKind kind, const std::string& id) const {
  if (auto i = find(kind, id)) return *i;
  throw std::out_of_range("unknown " + std::string(to_string(kind)) + " \"" + id + "\"");
}

CorporateGraph build_graph(const BipartiteDataset& dataset) { return CorporateGraph(dataset); }

std::size_t DegreeHistogram::count(std::size_t degree) const {
  auto it = counts.find(degree);
  return it == counts.end() ? 0 : it->second;
}

std::size_t DegreeHistogram::count_at_least(std::size_t degree) const {
  std::size_t n = 0;
  for (auto it = counts.lower_bound(degree); it != counts.end(); ++it) n += it->second;
  return n;
}

double DegreeHistogram::fraction(std::size_t degree) const {
  return total == 0 ? 0.0 : static_cast<double>(count(degree)) / static_cast<double>(total);
}

double DegreeHistogram::cumulative_ge_fraction(std::size_t degree) const {
  return total == 0 ? 0.0
                    : static_cast<double>(count_at_least(degree)) / static_cast<double>(total);
}

std::vector<HistogramRow> DegreeHistogram::rows() const {
  std::vector<HistogramRow> out;
  out.reserve(counts.size());
  std::size_t remaining = total;
  for (const auto& [degree, n] : counts) {
    const double denom = static_cast<double>(total);
    out.push_back({degree, n, static_cast<double>(n) / denom,
                   static_cast<double>(remaining) / denom});
    remaining -= n;
  }
  return out;
}

DegreeHistogram degree_histogram(const CorporateGraph& graph, NodeKind kind) {
  DegreeHistogram h;
  h.kind = kind;
  h.total = graph.size(kind);
  for (NodeIndex i = 0; i < graph.size(kind); ++i) ++h.counts[graph.degree(kind, i)];
  return h;
}

std::vector<StarNode> star_nodes(const CorporateGraph& graph, NodeKind kind,
                                 std::size_t min_degree) {
  if (min_degree < 1) throw std::invalid_argument("star node min_degree must be >= 1");
  std::vector<StarNode> out;
  for (NodeIndex i = 0; i < graph.size(kind); ++i) {
    const auto d = graph.degree(kind, i);
    if (d >= min_degree) out.push_back({graph.id(kind, i), d});
  }
  // Index order is identifier order, so a stable sort keeps the tie-break.
  std::stable_sort(out.begin(), out.end(),
                   [](const StarNode& a, const StarNode& b) { return a.degree > b.degree; });
  return out;
}

std::vector<NodeRef> articulation_report(const CorporateGraph& graph) {
  // Unified numbering: companies first, then directors.
  const std::size_t nc = graph.size(NodeKind::company);
  const std::size_t n = graph.node_count();
  auto kind_of = [nc](std::size_t v) { return v < nc ? NodeKind::company : NodeKind::director; };
  auto local = [nc](std::size_t v) { return static_cast<NodeIndex>(v < nc ? v : v - nc); };
  auto neighbor = [&](std::size_t v, std::size_t k) -> std::size_t {
    const auto kind = kind_of(v);
    const NodeIndex u = graph.neighbors(kind, local(v))[k];
    return kind == NodeKind::company ? nc + u : u;
  };

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, kUnvisited), low(n, 0), parent(n, kUnvisited);
  std::vector<std::size_t> next_edge(n, 0);
  std::vector<bool> is_cut(n, false);
  std::size_t timer = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited) continue;
    std::size_t root_children = 0;
    std::vector<std::size_t> stack{root};
    disc[root] = low[root] = timer++;

    while (!stack.empty()) {
      const std::size_t v = stack.back();
      if (next_edge[v] < graph.degree(kind_of(v), local(v))) {
        const std::size_t w = neighbor(v, next_edge[v]++);
        if (disc[w] == kUnvisited) {
          parent[w] = v;
          disc[w] = low[w] = timer++;
          if (v == root) ++root_children;
          stack.push_back(w);
        } else if (w != parent[v]) {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        stack.pop_back();
        const std::size_t p = parent[v];
        if (p != kUnvisited) {
          low[p] = std::min(low[p], low[v]);
          if (p != root && low[v] >= disc[p]) is_cut[p] = true;
        }
      }
    }
    if (root_children >= 2) is_cut[root] = true;
  }

  std::vector<NodeRef> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_cut[v]) out.push_back({kind_of(v), graph.id(kind_of(v), local(v))});
  }
  return out;
}

}  // namespace interlock
