#include "ulam/random.hpp"

#include <sstream>

#include "ulam/error.hpp"

namespace ulam {

std::uint64_t Rng::uniform_index(std::uint64_t n) {
  if (n == 0) raise(ErrorKind::InvalidArgument, "uniform_index(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

std::string Rng::state() const {
  std::ostringstream out;
  out << engine_;
  return out.str();
}

void Rng::set_state(const std::string& text) {
  std::istringstream in(text);
  in >> engine_;
  if (!in) raise(ErrorKind::Parse, "invalid generator state");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) noexcept {
  // splitmix64 finalizer over the combined words.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Permutation random_permutation(std::size_t d, Rng& rng) {
  std::vector<Symbol> s(d);
  for (std::size_t i = 0; i < d; ++i) s[i] = static_cast<Symbol>(i + 1);
  rng.shuffle(s);
  return validate(std::move(s));
}

Permutation apply_random_move(const Permutation& p, Rng& rng) {
  const std::size_t d = p.dimension();
  std::vector<Symbol> s(p.symbols().begin(), p.symbols().end());
  if (d < 2) return validate(std::move(s));
  const std::size_t from = rng.uniform_index(d);
  std::size_t to = rng.uniform_index(d - 1);
  if (to >= from) ++to;
  const Symbol moved = s[from];
  s.erase(s.begin() + static_cast<std::ptrdiff_t>(from));
  s.insert(s.begin() + static_cast<std::ptrdiff_t>(to), moved);
  return validate(std::move(s));
}

}  // namespace ulam
