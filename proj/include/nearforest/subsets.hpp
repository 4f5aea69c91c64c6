#pragma once

#include <cstddef>
#include <vector>

#include "nearforest/multigraph.hpp"

namespace nearforest {

// Calls fn on every size-`size` subset of `items` in lexicographic order of
// positions; stops early when fn returns true and reports whether it did.
template <typename Fn>
bool for_each_subset_of_size(const std::vector<VertexId>& items, std::size_t size, Fn&& fn) {
  if (size > items.size()) return false;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    VertexSet subset;
    for (std::size_t i : idx) subset.insert(items[i]);
    if (fn(subset)) return true;
    std::size_t pos = size;
    while (pos > 0 && idx[pos - 1] == items.size() - size + pos - 1) --pos;
    if (pos == 0) return false;
    ++idx[pos - 1];
    for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
}

// Subsets of size 0, 1, ..., max_size in turn.
template <typename Fn>
bool for_each_subset_up_to(const std::vector<VertexId>& items, std::size_t max_size, Fn&& fn) {
  for (std::size_t size = 0; size <= max_size && size <= items.size(); ++size)
    if (for_each_subset_of_size(items, size, fn)) return true;
  return false;
}

}  // namespace nearforest
