#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ulam {

using Symbol = std::uint32_t;

/// A total ordering of the symbols 1..d.
///
/// Instances are only produced by `validate`, so every live Permutation is a
/// bijection on {1,..,d}. Values are immutable; the position index of every
/// symbol is cached at construction so distance queries never allocate it.
class Permutation {
 public:
  std::size_t dimension() const noexcept { return symbols_.size(); }

  /// Symbols in order, 1-based.
  std::span<const Symbol> symbols() const noexcept { return symbols_; }

  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

  /// 0-based position of a 1-based symbol.
  std::uint32_t position_of(Symbol s) const noexcept { return positions_[s - 1]; }

  std::span<const std::uint32_t> positions() const noexcept { return positions_; }

  std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) noexcept {
    return a.symbols_ == b.symbols_;
  }
  friend auto operator<=>(const Permutation& a, const Permutation& b) noexcept {
    return a.symbols_ <=> b.symbols_;
  }

  static Permutation identity(std::size_t d);

 private:
  friend Permutation validate(std::span<const Symbol> symbols);
  friend Permutation validate(std::vector<Symbol>&& symbols);

  Permutation(std::vector<Symbol> symbols, std::vector<std::uint32_t> positions)
      : symbols_(std::move(symbols)), positions_(std::move(positions)) {}

  std::vector<Symbol> symbols_;
  std::vector<std::uint32_t> positions_;
};

/// Checks that `symbols` is a bijection on {1,..,d}, d = symbols.size().
/// Throws DimensionZero for empty input and NotBijection naming the first
/// duplicate or out-of-range symbol.
Permutation validate(std::span<const Symbol> symbols);
Permutation validate(std::vector<Symbol>&& symbols);
inline Permutation validate(std::initializer_list<Symbol> symbols) {
  return validate(std::span<const Symbol>(symbols.begin(), symbols.size()));
}

/// Length of a longest common subsequence, via relabeling and patience
/// sorting in O(d log d).
std::size_t lcs_length(const Permutation& x, const Permutation& y);

/// Quadratic dynamic-programming LCS. Reference semantics for lcs_length.
std::size_t lcs_length_oracle(const Permutation& x, const Permutation& y);

/// Minimum number of character moves turning x into y: d - |lcs(x,y)|.
std::size_t ulam_distance(const Permutation& x, const Permutation& y);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept;
};

}  // namespace ulam
