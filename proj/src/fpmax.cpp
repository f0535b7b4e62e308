#include "fpmax.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace interlock::detail {

namespace {

constexpr std::int32_t kNone = -1;

std::uint64_t child_key(std::int32_t parent, ItemRank item) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(parent)) << 32) | item;
}

// Prefix tree of transactions ordered by rank, with per-item node links.
class FpTree {
 public:
  struct Node {
    ItemRank item;
    std::size_t count;
    std::int32_t parent;
    std::int32_t link;  // next node carrying the same item
    std::size_t children;
  };

  FpTree() { nodes_.push_back({0, 0, kNone, kNone, 0}); }

  void insert(const RankedTransaction& ranks, std::size_t count) {
    std::int32_t at = 0;
    for (ItemRank item : ranks) {
      auto [it, fresh] = child_.try_emplace(child_key(at, item), 0);
      if (fresh) {
        const auto id = static_cast<std::int32_t>(nodes_.size());
        auto& info = items_[item];
        nodes_.push_back({item, 0, at, info.head, 0});
        info.head = id;
        ++nodes_[at].children;
        it->second = id;
      }
      at = it->second;
      nodes_[at].count += count;
      items_[item].count += count;
    }
  }

  bool single_path() const {
    for (const auto& n : nodes_) {
      if (n.children > 1) return false;
    }
    return true;
  }

  std::vector<ItemRank> items() const {
    std::vector<ItemRank> out;
    out.reserve(items_.size());
    for (const auto& [item, info] : items_) out.push_back(item);
    return out;
  }

  // Conditional pattern base of `item`: ascending prefix paths with counts.
  std::vector<std::pair<RankedTransaction, std::size_t>> prefix_paths(ItemRank item) const {
    std::vector<std::pair<RankedTransaction, std::size_t>> out;
    for (std::int32_t n = items_.at(item).head; n != kNone; n = nodes_[n].link) {
      RankedTransaction path;
      for (std::int32_t p = nodes_[n].parent; p > 0; p = nodes_[p].parent) {
        path.push_back(nodes_[p].item);
      }
      std::reverse(path.begin(), path.end());
      out.emplace_back(std::move(path), nodes_[n].count);
    }
    return out;
  }

 private:
  struct ItemInfo {
    std::int32_t head = kNone;
    std::size_t count = 0;
  };

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::int32_t> child_;
  std::unordered_map<ItemRank, ItemInfo> items_;
};

// Prefix tree of the maximal itemsets found so far, answering "is this
// set contained in one of them".
class MfiTree {
 public:
  MfiTree() { nodes_.push_back({0, kNone}); }

  void insert(const RankedTransaction& set) {
    std::int32_t at = 0;
    for (ItemRank item : set) {
      auto [it, fresh] = child_.try_emplace(child_key(at, item), 0);
      if (fresh) {
        const auto id = static_cast<std::int32_t>(nodes_.size());
        nodes_.push_back({item, at});
        by_item_[item].push_back(id);
        it->second = id;
      }
      at = it->second;
    }
    sets_.push_back(set);
  }

  // `set` ascending and non-empty.
  bool subsumes(const RankedTransaction& set) const {
    auto it = by_item_.find(set.back());
    if (it == by_item_.end()) return false;
    for (std::int32_t n : it->second) {
      // Remaining items have smaller ranks, so they must be ancestors of n.
      auto want = set.rbegin() + 1;
      for (std::int32_t p = nodes_[n].parent; p > 0 && want != set.rend();
           p = nodes_[p].parent) {
        if (nodes_[p].item == *want) {
          ++want;
        } else if (nodes_[p].item < *want) {
          break;
        }
      }
      if (want == set.rend()) return true;
    }
    return false;
  }

  std::vector<RankedTransaction> take() { return std::move(sets_); }

 private:
  struct Node {
    ItemRank item;
    std::int32_t parent;
  };
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, std::int32_t> child_;
  std::unordered_map<ItemRank, std::vector<std::int32_t>> by_item_;
  std::vector<RankedTransaction> sets_;
};

class FpMax {
 public:
  explicit FpMax(std::size_t min_count) : min_count_(min_count) {}

  void mine(const FpTree& tree, RankedTransaction& head) {
    if (tree.single_path()) {
      RankedTransaction candidate = head;
      const auto path = tree.items();
      candidate.insert(candidate.end(), path.begin(), path.end());
      if (candidate.empty()) return;
      std::sort(candidate.begin(), candidate.end());
      if (!mfi_.subsumes(candidate)) mfi_.insert(candidate);
      return;
    }

    auto items = tree.items();
    std::sort(items.rbegin(), items.rend());  // least frequent first
    for (ItemRank item : items) {
      head.push_back(item);
      const auto base = tree.prefix_paths(item);

      std::unordered_map<ItemRank, std::size_t> counts;
      for (const auto& [path, count] : base) {
        for (ItemRank i : path) counts[i] += count;
      }
      RankedTransaction tail;
      for (const auto& [i, c] : counts) {
        if (c >= min_count_) tail.push_back(i);
      }

      RankedTransaction candidate = head;
      candidate.insert(candidate.end(), tail.begin(), tail.end());
      std::sort(candidate.begin(), candidate.end());

      if (!mfi_.subsumes(candidate)) {
        if (tail.empty()) {
          mfi_.insert(candidate);
        } else {
          FpTree conditional;
          RankedTransaction filtered;
          for (const auto& [path, count] : base) {
            filtered.clear();
            for (ItemRank i : path) {
              if (counts[i] >= min_count_) filtered.push_back(i);
            }
            if (!filtered.empty()) conditional.insert(filtered, count);
          }
          mine(conditional, head);
        }
      }
      head.pop_back();
    }
  }

  std::vector<RankedTransaction> take() { return mfi_.take(); }

 private:
  std::size_t min_count_;
  MfiTree mfi_;
};

}  // namespace

std::vector<RankedTransaction> fpmax(const std::vector<RankedTransaction>& transactions,
                                     std::size_t min_count) {
  FpTree tree;
  for (const auto& t : transactions) {
    if (!t.empty()) tree.insert(t, 1);
  }
  FpMax miner(min_count);
  RankedTransaction head;
  miner.mine(tree, head);
  return miner.take();
}

}  // namespace interlock::detail
