#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace interlock::detail {

using ItemRank = std::uint32_t;
using RankedTransaction = std::vector<ItemRank>;

// FPMax over transactions whose items are frequency ranks (0 = most
// frequent), each transaction ascending and holding only frequent items.
// Returns every maximal itemset with support >= min_count as ascending
// rank vectors, in discovery order.
std::vector<RankedTransaction> fpmax(const std::vector<RankedTransaction>& transactions,
                                     std::size_t min_count);

}  // namespace interlock::detail
