#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace ulam {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

/// C(n, r), saturating at kSaturated instead of overflowing.
std::uint64_t binomial(std::uint64_t n, std::uint64_t r) noexcept;

/// Advances `idx` (strictly increasing indices into [0, n)) to the next
/// combination in lexicographic order. Returns false after the last one.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) noexcept;

/// Calls f(const std::vector<std::size_t>&) for every r-subset of [0, n) in
/// lexicographic order.
template <class F>
void for_each_combination(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t i = 0; i < r; ++i) idx[i] = i;
  do {
    f(idx);
  } while (next_combination(idx, n));
}

}  // namespace ulam
