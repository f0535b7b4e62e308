#include "interlock/projection.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace interlock {

ProjectionGraph::ProjectionGraph(NodeKind mode, std::vector<std::string> ids,
                                 std::vector<ProjectionEdge> edges)
    : mode_(mode) {
  std::vector<NodeIndex> order(ids.size());
  std::iota(order.begin(), order.end(), NodeIndex{0});
  std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) { return ids[a] < ids[b]; });
  std::vector<NodeIndex> remap(ids.size());
  ids_.reserve(ids.size());
  for (NodeIndex rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    ids_.push_back(std::move(ids[order[rank]]));
    if (rank > 0 && ids_[rank] == ids_[rank - 1]) {
      throw std::invalid_argument("duplicate projection node \"" + ids_[rank] + "\"");
    }
  }

  for (auto& e : edges) {
    if (e.u >= ids_.size() || e.v >= ids_.size()) {
      throw std::invalid_argument("projection edge endpoint out of range");
    }
    if (e.u == e.v) throw std::invalid_argument("projection self loop");
    if (e.shared.empty()) throw std::invalid_argument("projection edge with no shared entity");
    e.u = remap[e.u];
    e.v = remap[e.v];
    if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(e.shared.begin(), e.shared.end());
    e.shared.erase(std::unique(e.shared.begin(), e.shared.end()), e.shared.end());
  }
  std::sort(edges.begin(), edges.end(), [](const ProjectionEdge& a, const ProjectionEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  edges_ = std::move(edges);

  adj_.resize(ids_.size());
  edge_index_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (!edge_index_.emplace(key(e.u, e.v), i).second) {
      throw std::invalid_argument("duplicate projection edge " + ids_[e.u] + "-" + ids_[e.v]);
    }
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
  }
  for (auto& n : adj_) std::sort(n.begin(), n.end());
}

std::optional<NodeIndex> ProjectionGraph::find(const std::string& id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

bool ProjectionGraph::adjacent(NodeIndex a, NodeIndex b) const {
  return a != b && edge_index_.contains(key(a, b));
}

const ProjectionEdge* ProjectionGraph::edge(NodeIndex a, NodeIndex b) const {
  if (a == b) return nullptr;
  auto it = edge_index_.find(key(a, b));
  return it == edge_index_.end() ? nullptr : &edges_[it->second];
}

ProjectionGraph ProjectionGraph::induced(std::span<const NodeIndex> nodes) const {
  std::vector<NodeIndex> keep(nodes.begin(), nodes.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  constexpr NodeIndex kAbsent = static_cast<NodeIndex>(-1);
  std::vector<NodeIndex> local(ids_.size(), kAbsent);
  std::vector<std::string> sub_ids;
  sub_ids.reserve(keep.size());
  for (NodeIndex i = 0; i < keep.size(); ++i) {
    local.at(keep[i]) = i;
    sub_ids.push_back(ids_[keep[i]]);
  }
  std::vector<ProjectionEdge> sub_edges;
  for (NodeIndex a : keep) {
    for (NodeIndex b : adj_[a]) {
      if (b <= a || local[b] == kAbsent) continue;
      sub_edges.push_back({local[a], local[b], edge(a, b)->shared});
    }
  }
  return ProjectionGraph(mode_, std::move(sub_ids), std::move(sub_edges));
}

ProjectionGraph project(const CorporateGraph& graph, NodeKind mode) {
  const NodeKind other = opposite(mode);
  // Entities are visited in ascending order, so each shared list is built sorted.
  std::unordered_map<std::uint64_t, std::vector<NodeIndex>> shared;
  for (NodeIndex e = 0; e < graph.size(other); ++e) {
    const auto members = graph.neighbors(other, e);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const auto k = (static_cast<std::uint64_t>(members[i]) << 32) | members[j];
        shared[k].push_back(e);
      }
    }
  }

  std::vector<std::uint64_t> keys;
  keys.reserve(shared.size());
  for (const auto& [k, v] : shared) keys.push_back(k);
  std::sort(keys.begin(), keys.end());

  std::vector<ProjectionEdge> edges;
  edges.reserve(keys.size());
  for (auto k : keys) {
    ProjectionEdge edge{static_cast<NodeIndex>(k >> 32), static_cast<NodeIndex>(k & 0xFFFFFFFFu),
                        {}};
    const auto& entities = shared[k];
    edge.shared.reserve(entities.size());
    for (NodeIndex e : entities) edge.shared.push_back(graph.id(other, e));
    edges.push_back(std::move(edge));
  }

  std::vector<std::string> ids;
  ids.reserve(graph.size(mode));
  for (NodeIndex i = 0; i < graph.size(mode); ++i) ids.push_back(graph.id(mode, i));
  return ProjectionGraph(mode, std::move(ids), std::move(edges));
}

namespace {

// Two-mode BFS hop counts from a node, bounded by max_hops. Only the
// distances of same-mode nodes are returned.
std::vector<std::size_t> same_mode_distances(const CorporateGraph& graph, NodeKind mode,
                                             NodeIndex source, std::size_t max_hops) {
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  const NodeKind other = opposite(mode);
  std::vector<std::size_t> same(graph.size(mode), kInf);
  std::vector<std::size_t> opp(graph.size(other), kInf);
  std::deque<std::pair<NodeKind, NodeIndex>> queue;
  same[source] = 0;
  queue.emplace_back(mode, source);
  while (!queue.empty()) {
    auto [kind, v] = queue.front();
    queue.pop_front();
    const auto d = kind == mode ? same[v] : opp[v];
    if (d == max_hops) continue;
    auto& next = kind == mode ? opp : same;
    for (NodeIndex w : graph.neighbors(kind, v)) {
      if (next[w] != kInf) continue;
      next[w] = d + 1;
      queue.emplace_back(opposite(kind), w);
    }
  }
  return same;
}

class PathEnumerator {
 public:
  PathEnumerator(const CorporateGraph& graph, NodeKind mode, const IndirectOptions& options)
      : graph_(graph),
        mode_(mode),
        options_(options),
        on_path_same_(graph.size(mode), false),
        on_path_other_(graph.size(opposite(mode)), false) {}

  // Fills `found` (target -> connection) for one source.
  void run(NodeIndex source, const std::vector<bool>& is_target,
           std::map<NodeIndex, IndirectConnection>& found) {
    is_target_ = &is_target;
    found_ = &found;
    path_.assign(1, source);
    on_path_same_[source] = true;
    extend(mode_, source);
    on_path_same_[source] = false;
  }

 private:
  void extend(NodeKind kind, NodeIndex v) {
    const std::size_t hops = path_.size() - 1;
    if (kind == mode_ && hops >= 4 && (*is_target_)[v]) record(v);
    if (hops == options_.max_path_len) return;

    const NodeKind next_kind = opposite(kind);
    auto& on_path = next_kind == mode_ ? on_path_same_ : on_path_other_;
    for (NodeIndex w : graph_.neighbors(kind, v)) {
      if (on_path[w]) continue;
      on_path[w] = true;
      path_.push_back(w);
      extend(next_kind, w);
      path_.pop_back();
      on_path[w] = false;
    }
  }

  void record(NodeIndex target) {
    auto& c = (*found_)[target];
    if (c.paths.size() >= options_.max_paths_per_pair) {
      c.truncated = true;
      return;
    }
    std::vector<std::string> ids;
    ids.reserve(path_.size());
    for (std::size_t i = 0; i < path_.size(); ++i) {
      const NodeKind k = i % 2 == 0 ? mode_ : opposite(mode_);
      ids.push_back(graph_.id(k, path_[i]));
    }
    c.paths.push_back(std::move(ids));
  }

  const CorporateGraph& graph_;
  NodeKind mode_;
  const IndirectOptions& options_;
  std::vector<bool> on_path_same_;
  std::vector<bool> on_path_other_;
  std::vector<NodeIndex> path_;
  const std::vector<bool>* is_target_ = nullptr;
  std::map<NodeIndex, IndirectConnection>* found_ = nullptr;
};

}  // namespace

std::vector<IndirectConnection> indirect_connections(const CorporateGraph& graph, NodeKind mode,
                                                     const IndirectOptions& options) {
  if (options.max_path_len < 4 || options.max_path_len % 2 != 0) {
    throw std::invalid_argument("max_path_len must be an even number of hops >= 4");
  }
  if (options.max_paths_per_pair < 1) {
    throw std::invalid_argument("max_paths_per_pair must be >= 1");
  }

  std::vector<NodeIndex> sources;
  if (options.sources) {
    for (const auto& id : *options.sources) {
      auto i = graph.find(mode, id);
      if (!i) {
        throw std::invalid_argument("unknown " + std::string(to_string(mode)) + " \"" + id + "\"");
      }
      sources.push_back(*i);
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  } else {
    sources.resize(graph.size(mode));
    std::iota(sources.begin(), sources.end(), NodeIndex{0});
  }

  std::vector<bool> is_source(graph.size(mode), !options.sources);
  for (NodeIndex s : sources) is_source[s] = true;

  std::vector<IndirectConnection> out;
  PathEnumerator enumerator(graph, mode, options);
  std::vector<bool> is_target(graph.size(mode));
  for (NodeIndex s : sources) {
    const auto dist = same_mode_distances(graph, mode, s, options.max_path_len);
    bool any = false;
    for (NodeIndex t = 0; t < graph.size(mode); ++t) {
      // A pair of two sources is reported once, from the smaller one.
      const bool canonical = !is_source[t] || t > s;
      is_target[t] = canonical && t != s && dist[t] != static_cast<std::size_t>(-1) && dist[t] >= 4;
      any = any || is_target[t];
    }
    if (!any) continue;

    std::map<NodeIndex, IndirectConnection> found;
    enumerator.run(s, is_target, found);
    for (auto& [t, c] : found) {
      c.u = graph.id(mode, s);
      c.v = graph.id(mode, t);
      c.connection_degree = dist[t] / 2;
      c.path_count = c.paths.size();
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<IndirectConnection> connection_strength_order(
    std::vector<IndirectConnection> connections) {
  std::sort(connections.begin(), connections.end(),
            [](const IndirectConnection& a, const IndirectConnection& b) {
              if (a.connection_degree != b.connection_degree) {
                return a.connection_degree < b.connection_degree;
              }
              if (a.path_count != b.path_count) return a.path_count > b.path_count;
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  return connections;
}

}  // namespace interlock
