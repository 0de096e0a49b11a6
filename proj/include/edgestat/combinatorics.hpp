#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace edgestat {

/// Advances `comb` (strictly increasing values in [lo, hi]) to the next
/// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::vector<std::uint32_t>& comb, [[maybe_unused]] std::uint32_t lo,
                             std::uint32_t hi) {
  const std::size_t k = comb.size();
  if (k == 0) return false;
  std::size_t i = k;
  while (i > 0) {
    --i;
    // Largest value allowed at position i.
    const std::uint32_t limit = hi - static_cast<std::uint32_t>(k - 1 - i);
    if (comb[i] < limit) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// First combination {lo, lo+1, ..., lo+k-1}.
inline std::vector<std::uint32_t> first_combination(std::uint32_t k, std::uint32_t lo = 1) {
  std::vector<std::uint32_t> comb(k);
  for (std::uint32_t i = 0; i < k; ++i) comb[i] = lo + i;
  return comb;
}

/// Elements of `items` selected by the bits of `mask` (bit i -> items[i]).
template <typename T>
std::vector<T> select_by_mask(std::span<const T> items, std::uint64_t mask) {
  std::vector<T> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if ((mask >> i) & 1U) out.push_back(items[i]);
  }
  return out;
}

/// Subset masks of an s-element ground set ordered by size, then
/// lexicographically by the sorted list of selected positions.
std::vector<std::uint64_t> masks_by_size_then_lex(unsigned s);

}  // namespace edgestat
