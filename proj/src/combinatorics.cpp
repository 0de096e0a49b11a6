#include "edgestat/combinatorics.hpp"

namespace edgestat {

std::vector<std::uint64_t> masks_by_size_then_lex(unsigned s) {
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << s);
  out.push_back(0);
  for (unsigned size = 1; size <= s; ++size) {
    auto comb = first_combination(size, 0);
    do {
      std::uint64_t mask = 0;
      for (auto i : comb) mask |= 1ULL << i;
      out.push_back(mask);
    } while (next_combination(comb, 0, s - 1));
  }
  return out;
}

}  // namespace edgestat
