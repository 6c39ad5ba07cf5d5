#include "ulam/permutation.hpp"

#include <algorithm>
#include <limits>

#include "ulam/error.hpp"

namespace ulam {

namespace {

constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();

void require_same_dimension(const Permutation& x, const Permutation& y) {
  if (x.dimension() != y.dimension()) {
    raise(ErrorKind::DimensionMismatch, "dimensions " + std::to_string(x.dimension()) +
                                            " and " + std::to_string(y.dimension()));
  }
}

}  // namespace

Permutation validate(std::vector<Symbol>&& symbols) {
  const std::size_t d = symbols.size();
  if (d == 0) raise(ErrorKind::DimensionZero, "empty permutation");
  std::vector<std::uint32_t> positions(d, kUnset);
  for (std::size_t i = 0; i < d; ++i) {
    const Symbol s = symbols[i];
    if (s < 1 || s > d || positions[s - 1] != kUnset) {
      raise(ErrorKind::NotBijection, "symbol " + std::to_string(s) + " at position " +
                                         std::to_string(i + 1) + " (d=" + std::to_string(d) +
                                         ")");
    }
    positions[s - 1] = static_cast<std::uint32_t>(i);
  }
  return Permutation(std::move(symbols), std::move(positions));
}

Permutation validate(std::span<const Symbol> symbols) {
  return validate(std::vector<Symbol>(symbols.begin(), symbols.end()));
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<Symbol> s(d);
  for (std::size_t i = 0; i < d; ++i) s[i] = static_cast<Symbol>(i + 1);
  return validate(std::move(s));
}

std::string Permutation::to_string() const {
  std::string out;
  out.reserve(symbols_.size() * 3);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(symbols_[i]);
  }
  return out;
}

std::size_t lcs_length(const Permutation& x, const Permutation& y) {
  require_same_dimension(x, y);
  // Relabel y by positions in x; a common subsequence is then an increasing
  // run of positions. tails[j] is the smallest tail of an increasing
  // subsequence of length j+1 seen so far.
  thread_local std::vector<std::uint32_t> tails;
  tails.clear();
  for (const Symbol s : y.symbols()) {
    const std::uint32_t v = x.position_of(s);
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end()) {
      tails.push_back(v);
    } else {
      *it = v;
    }
  }
  return tails.size();
}

std::size_t lcs_length_oracle(const Permutation& x, const Permutation& y) {
  require_same_dimension(x, y);
  const std::size_t d = x.dimension();
  std::vector<std::size_t> prev(d + 1, 0), cur(d + 1, 0);
  for (std::size_t i = 1; i <= d; ++i) {
    for (std::size_t j = 1; j <= d; ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[d];
}

std::size_t ulam_distance(const Permutation& x, const Permutation& y) {
  return x.dimension() - lcs_length(x, y);
}

std::size_t PermutationHash::operator()(const Permutation& p) const noexcept {
  // FNV-1a over the symbol words.
  std::uint64_t h = 1469598103934665603ull;
  for (const Symbol s : p.symbols()) {
    h ^= s;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace ulam
