#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ulam/permutation.hpp"

namespace ulam {

/// Complete directed graph on the symbols 1..d with exactly one edge per
/// unordered pair, plus the set of vertices still alive. Rows are bitsets.
class TournamentGraph {
 public:
  /// Edge a->b for a < b set from `a_before_b(a, b)`, all vertices alive.
  template <class Pred>
  static TournamentGraph from_predicate(std::size_t d, Pred a_before_b);

  std::size_t dimension() const noexcept { return d_; }

  bool has_edge(Symbol from, Symbol to) const noexcept {
    return test(out_, from - 1, to - 1);
  }
  bool alive(Symbol v) const noexcept { return test_bit(alive_, v - 1); }
  std::size_t alive_count() const noexcept;
  std::vector<Symbol> alive_symbols() const;

  /// Out-degree of v counted among alive vertices.
  std::size_t alive_out_degree(Symbol v) const noexcept;

  void remove(Symbol v) noexcept { clear_bit(alive_, v - 1); }

  /// First directed triangle v->a->b->v among alive vertices, scanning (a,b)
  /// in lexicographic order. Used by shortest_cycle_through.
  std::optional<std::array<Symbol, 3>> first_triangle_through(Symbol v) const noexcept;

 private:
  explicit TournamentGraph(std::size_t d);

  static bool test_bit(const std::vector<std::uint64_t>& bits, std::size_t i) noexcept {
    return (bits[i >> 6] >> (i & 63)) & 1u;
  }
  static void clear_bit(std::vector<std::uint64_t>& bits, std::size_t i) noexcept {
    bits[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  bool test(const std::vector<std::uint64_t>& m, std::size_t r, std::size_t c) const noexcept {
    return (m[r * words_ + (c >> 6)] >> (c & 63)) & 1u;
  }
  void set_edge(std::size_t from, std::size_t to) noexcept {
    out_[from * words_ + (to >> 6)] |= std::uint64_t{1} << (to & 63);
    in_[to * words_ + (from >> 6)] |= std::uint64_t{1} << (from & 63);
  }

  std::size_t d_;
  std::size_t words_;
  std::vector<std::uint64_t> out_;  // row a: bit b set iff a->b
  std::vector<std::uint64_t> in_;   // row b: bit a set iff a->b
  std::vector<std::uint64_t> alive_;
};

template <class Pred>
TournamentGraph TournamentGraph::from_predicate(std::size_t d, Pred a_before_b) {
  TournamentGraph g(d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b) {
      if (a_before_b(static_cast<Symbol>(a + 1), static_cast<Symbol>(b + 1))) {
        g.set_edge(a, b);
      } else {
        g.set_edge(b, a);
      }
    }
  }
  return g;
}

struct ReconstructionReport {
  Permutation output;
  /// Symbols deleted by cycle removal, ascending. They form the suffix of
  /// `output` in this order.
  std::vector<Symbol> removed_symbols;
  std::size_t removed_cycle_count = 0;
};

/// Majority tournament: a->b iff a precedes b in at least three of the five
/// inputs. Throws WrongArity unless exactly five permutations are given.
TournamentGraph build_tournament(std::span<const Permutation> inputs);
TournamentGraph build_tournament(std::span<const Permutation* const> inputs);

/// Some directed triangle (v,a,b) through v, or nullopt when v lies on no
/// cycle. In a tournament a vertex on any cycle lies on a triangle, so this
/// is a shortest cycle. Throws VertexRemoved if v is not alive.
std::optional<std::array<Symbol, 3>> shortest_cycle_through(const TournamentGraph& g, Symbol v);

struct CycleRemoval {
  TournamentGraph graph;
  std::vector<std::array<Symbol, 3>> removed_cycles;
};

/// One ascending pass over the vertices deleting a triangle through each
/// alive vertex that still has one. The survivors are acyclic.
CycleRemoval remove_cycles(TournamentGraph g);

/// Alive vertices in topological order (by alive out-degree, descending).
/// Throws CyclicGraph when the alive subgraph is not transitive.
std::vector<Symbol> topological_permutation(const TournamentGraph& g);

/// Tournament, cycle removal, topological order, then the removed symbols
/// in ascending order.
ReconstructionReport median_reconstruct(std::span<const Permutation> inputs);
ReconstructionReport median_reconstruct(std::span<const Permutation* const> inputs);

}  // namespace ulam
