#include "ulam/tournament.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ulam/error.hpp"

namespace ulam {

TournamentGraph::TournamentGraph(std::size_t d)
    : d_(d),
      words_((d + 63) / 64),
      out_(d * words_, 0),
      in_(d * words_, 0),
      alive_(words_, 0) {
  for (std::size_t i = 0; i < d; ++i) alive_[i >> 6] |= std::uint64_t{1} << (i & 63);
}

std::size_t TournamentGraph::alive_count() const noexcept {
  std::size_t n = 0;
  for (auto w : alive_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Symbol> TournamentGraph::alive_symbols() const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < d_; ++i) {
    if (test_bit(alive_, i)) out.push_back(static_cast<Symbol>(i + 1));
  }
  return out;
}

std::size_t TournamentGraph::alive_out_degree(Symbol v) const noexcept {
  const std::uint64_t* row = &out_[(v - 1) * words_];
  std::size_t n = 0;
  for (std::size_t w = 0; w < words_; ++w) n += static_cast<std::size_t>(std::popcount(row[w] & alive_[w]));
  return n;
}

std::optional<std::array<Symbol, 3>> TournamentGraph::first_triangle_through(
    Symbol v) const noexcept {
  const std::size_t vi = v - 1;
  const std::uint64_t* out_v = &out_[vi * words_];
  const std::uint64_t* in_v = &in_[vi * words_];
  for (std::size_t wa = 0; wa < words_; ++wa) {
    std::uint64_t cand_a = out_v[wa] & alive_[wa];
    while (cand_a) {
      const std::size_t a = wa * 64 + static_cast<std::size_t>(std::countr_zero(cand_a));
      cand_a &= cand_a - 1;
      const std::uint64_t* out_a = &out_[a * words_];
      for (std::size_t wb = 0; wb < words_; ++wb) {
        const std::uint64_t cand_b = out_a[wb] & in_v[wb] & alive_[wb];
        if (cand_b) {
          const std::size_t b = wb * 64 + static_cast<std::size_t>(std::countr_zero(cand_b));
          return std::array<Symbol, 3>{v, static_cast<Symbol>(a + 1), static_cast<Symbol>(b + 1)};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

template <class Deref>
TournamentGraph build_impl(std::size_t count, Deref at) {
  if (count != 5) {
    raise(ErrorKind::WrongArity, "median reconstruction needs exactly 5 permutations, got " +
                                     std::to_string(count));
  }
  const std::size_t d = at(0).dimension();
  for (std::size_t i = 1; i < 5; ++i) {
    if (at(i).dimension() != d) {
      raise(ErrorKind::DimensionMismatch, "input " + std::to_string(i) + " has dimension " +
                                              std::to_string(at(i).dimension()) +
                                              ", expected " + std::to_string(d));
    }
  }
  std::array<std::span<const std::uint32_t>, 5> pos;
  for (std::size_t i = 0; i < 5; ++i) pos[i] = at(i).positions();
  return TournamentGraph::from_predicate(d, [&](Symbol a, Symbol b) {
    int votes = 0;
    for (const auto& p : pos) votes += p[a - 1] < p[b - 1];
    return votes >= 3;
  });
}

template <class Deref>
ReconstructionReport reconstruct_impl(std::size_t count, Deref at) {
  auto removal = remove_cycles(build_impl(count, at));
  std::vector<Symbol> order = topological_permutation(removal.graph);
  std::vector<Symbol> removed;
  removed.reserve(removal.removed_cycles.size() * 3);
  for (const auto& c : removal.removed_cycles) removed.insert(removed.end(), c.begin(), c.end());
  std::sort(removed.begin(), removed.end());
  order.insert(order.end(), removed.begin(), removed.end());
  return ReconstructionReport{validate(std::move(order)), std::move(removed),
                              removal.removed_cycles.size()};
}

}  // namespace

TournamentGraph build_tournament(std::span<const Permutation> inputs) {
  return build_impl(inputs.size(), [&](std::size_t i) -> const Permutation& { return inputs[i]; });
}

TournamentGraph build_tournament(std::span<const Permutation* const> inputs) {
  return build_impl(inputs.size(), [&](std::size_t i) -> const Permutation& { return *inputs[i]; });
}

std::optional<std::array<Symbol, 3>> shortest_cycle_through(const TournamentGraph& g, Symbol v) {
  if (v < 1 || v > g.dimension() || !g.alive(v)) {
    raise(ErrorKind::VertexRemoved, "vertex " + std::to_string(v) + " is not alive");
  }
  return g.first_triangle_through(v);
}

CycleRemoval remove_cycles(TournamentGraph g) {
  CycleRemoval result{std::move(g), {}};
  auto& graph = result.graph;
  for (Symbol v = 1; v <= graph.dimension(); ++v) {
    if (!graph.alive(v)) continue;
    if (auto tri = graph.first_triangle_through(v)) {
      for (Symbol s : *tri) graph.remove(s);
      result.removed_cycles.push_back(*tri);
    }
  }
  return result;
}

std::vector<Symbol> topological_permutation(const TournamentGraph& g) {
  std::vector<Symbol> alive = g.alive_symbols();
  const std::size_t m = alive.size();
  std::vector<std::size_t> degree(g.dimension() + 1, 0);
  for (Symbol v : alive) degree[v] = g.alive_out_degree(v);
  std::sort(alive.begin(), alive.end(),
            [&](Symbol a, Symbol b) { return degree[a] > degree[b]; });
  // A tournament is transitive iff its out-degrees are exactly m-1,...,0.
  for (std::size_t i = 0; i < m; ++i) {
    if (degree[alive[i]] != m - 1 - i) {
      raise(ErrorKind::CyclicGraph, "alive subgraph still contains a cycle");
    }
  }
  return alive;
}

ReconstructionReport median_reconstruct(std::span<const Permutation> inputs) {
  return reconstruct_impl(inputs.size(),
                          [&](std::size_t i) -> const Permutation& { return inputs[i]; });
}

ReconstructionReport median_reconstruct(std::span<const Permutation* const> inputs) {
  return reconstruct_impl(inputs.size(),
                          [&](std::size_t i) -> const Permutation& { return *inputs[i]; });
}

}  // namespace ulam
