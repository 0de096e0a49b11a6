#include "edgestat/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace edgestat {

std::vector<std::uint32_t> Rng::k_subset(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw std::invalid_argument("k_subset: k exceeds n");
  std::vector<std::uint32_t> out;
  out.reserve(k);
  // Floyd: for j = n-k+1..n pick t in [1, j]; take j if t was already taken.
  std::vector<char> seen;
  if (k > 64) seen.assign(static_cast<std::size_t>(n) + 1, 0);
  const auto taken = [&](std::uint32_t v) {
    return seen.empty() ? std::find(out.begin(), out.end(), v) != out.end() : seen[v] != 0;
  };
  for (std::uint32_t j = n - k + 1; j <= n && k > 0; ++j) {
    auto t = static_cast<std::uint32_t>(below(j)) + 1;
    const std::uint32_t pick = taken(t) ? j : t;
    out.push_back(pick);
    if (!seen.empty()) seen[pick] = 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> Rng::distinct_sequence(std::uint32_t n, std::uint32_t k) {
  if (k > n) throw std::invalid_argument("distinct_sequence: k exceeds n");
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 1U);
  for (std::uint32_t i = 0; i < k; ++i) {
    auto j = i + static_cast<std::uint32_t>(below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace edgestat
