#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ulam/error.hpp"
#include "ulam/random.hpp"
#include "ulam/tournament.hpp"

using namespace ulam;

namespace {

std::vector<Permutation> five(const Permutation& a, const Permutation& b, const Permutation& c,
                              const Permutation& d, const Permutation& e) {
  return {a, b, c, d, e};
}

bool has_alive_triangle(const TournamentGraph& g) {
  const auto alive = g.alive_symbols();
  for (auto a : alive) {
    for (auto b : alive) {
      for (auto c : alive) {
        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, a)) return true;
      }
    }
  }
  return false;
}

std::vector<Permutation> random_five(std::size_t d, Rng& rng) {
  std::vector<Permutation> t;
  for (int i = 0; i < 5; ++i) t.push_back(random_permutation(d, rng));
  return t;
}

}  // namespace

TEST(Tournament, UnanimousInputGivesItsOrder) {
  const auto x = validate({3, 1, 4, 2});
  const auto g = build_tournament(five(x, x, x, x, x));
  for (Symbol a = 1; a <= 4; ++a) {
    for (Symbol b = 1; b <= 4; ++b) {
      if (a != b) EXPECT_EQ(g.has_edge(a, b), x.position_of(a) < x.position_of(b));
    }
  }
  EXPECT_EQ(topological_permutation(g), std::vector<Symbol>({3, 1, 4, 2}));
}

TEST(Tournament, ThreeCopiesDecideEveryEdge) {
  const auto x = validate({2, 4, 1, 3, 5});
  const auto y = validate({5, 3, 1, 4, 2});
  const auto g1 = build_tournament(five(x, x, x, y, y));
  const auto g2 = build_tournament(five(x, x, x, x, x));
  for (Symbol a = 1; a <= 5; ++a) {
    for (Symbol b = 1; b <= 5; ++b) {
      if (a != b) EXPECT_EQ(g1.has_edge(a, b), g2.has_edge(a, b));
    }
  }
}

// Edge set produced by an independent pairwise-count program.
TEST(Tournament, FrozenMajorityEdges) {
  const auto t = five(validate({2, 5, 3, 6, 1, 4}), validate({5, 4, 1, 3, 2, 6}), validate({2, 5, 4, 1, 6, 3}),
                      validate({2, 5, 3, 4, 6, 1}), validate({1, 4, 5, 6, 3, 2}));
  const std::vector<std::pair<Symbol, Symbol>> edges = {{1, 3}, {1, 6}, {2, 1}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 6},
                                                        {4, 1}, {4, 3}, {4, 6}, {5, 1}, {5, 3}, {5, 4}, {5, 6}};
  const auto g = build_tournament(t);
  std::size_t count = 0;
  for (Symbol a = 1; a <= 6; ++a) {
    for (Symbol b = 1; b <= 6; ++b) {
      if (a == b) continue;
      const bool expected = std::find(edges.begin(), edges.end(), std::pair{a, b}) != edges.end();
      EXPECT_EQ(g.has_edge(a, b), expected) << a << "->" << b;
      count += g.has_edge(a, b);
    }
  }
  EXPECT_EQ(count, 15u);
  const auto report = median_reconstruct(t);
  EXPECT_EQ(report.output, validate({2, 5, 4, 1, 3, 6}));
  EXPECT_TRUE(report.removed_symbols.empty());
  // Objective 10 on T against a brute-forced 1-median cost of 9.
  std::size_t cost = 0;
  for (const auto& x : t) cost += ulam_distance(x, report.output);
  EXPECT_EQ(cost, 10u);
}

TEST(Tournament, ArityAndDimensionErrors) {
  const auto x = validate({1, 2, 3});
  std::vector<Permutation> four(4, x);
  try {
    build_tournament(four);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::WrongArity);
  }
  auto mixed = five(x, x, x, x, validate({1, 2}));
  try {
    median_reconstruct(mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
}

TEST(ShortestCycle, RockPaperScissors) {
  const auto g = TournamentGraph::from_predicate(3, [](Symbol a, Symbol b) {
    return !(a == 1 && b == 3);  // 1->2, 2->3, 3->1
  });
  const auto tri = shortest_cycle_through(g, 1);
  ASSERT_TRUE(tri.has_value());
  EXPECT_EQ(*tri, (std::array<Symbol, 3>{1, 2, 3}));

  const auto removal = remove_cycles(g);
  EXPECT_EQ(removal.graph.alive_count(), 0u);
  EXPECT_EQ(removal.removed_cycles.size(), 1u);
  EXPECT_TRUE(topological_permutation(removal.graph).empty());
  try {
    shortest_cycle_through(removal.graph, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VertexRemoved);
  }
}

TEST(ShortestCycle, AcyclicHasNone) {
  const auto g = TournamentGraph::from_predicate(6, [](Symbol a, Symbol b) { return a < b; });
  for (Symbol v = 1; v <= 6; ++v) EXPECT_FALSE(shortest_cycle_through(g, v).has_value());
  const auto removal = remove_cycles(g);
  EXPECT_EQ(removal.graph.alive_count(), 6u);
  EXPECT_TRUE(removal.removed_cycles.empty());
}

TEST(ShortestCycle, RandomTournamentsAgreeWithEnumeration) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto g = TournamentGraph::from_predicate(7, [&](Symbol, Symbol) { return rng.uniform_index(2) == 0; });
    for (Symbol v = 1; v <= 7; ++v) {
      bool exists = false;
      for (Symbol a = 1; a <= 7; ++a) {
        for (Symbol b = 1; b <= 7; ++b) {
          if (a != v && b != v && a != b && g.has_edge(v, a) && g.has_edge(a, b) && g.has_edge(b, v)) exists = true;
        }
      }
      const auto tri = shortest_cycle_through(g, v);
      ASSERT_EQ(tri.has_value(), exists);
      if (tri) {
        const auto [x, a, b] = *tri;
        EXPECT_EQ(x, v);
        EXPECT_TRUE(g.has_edge(v, a) && g.has_edge(a, b) && g.has_edge(b, v));
      }
    }
    const auto removal = remove_cycles(g);
    EXPECT_FALSE(has_alive_triangle(removal.graph));
    EXPECT_EQ(removal.graph.alive_count() + 3 * removal.removed_cycles.size(), 7u);
  }
}

// Independent check: DFS topological sort of the surviving tournament.
TEST(Topological, MatchesDfsOrder) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto x = random_permutation(6, rng);
    const auto g = TournamentGraph::from_predicate(6, [&](Symbol a, Symbol b) { return x.position_of(a) < x.position_of(b); });
    std::vector<Symbol> order;
    std::vector<int> state(7, 0);
    auto visit = [&](auto&& self, Symbol v) -> void {
      state[v] = 1;
      for (Symbol w = 1; w <= 6; ++w) {
        if (w != v && g.has_edge(v, w) && state[w] == 0) self(self, w);
      }
      order.push_back(v);
    };
    for (Symbol v = 1; v <= 6; ++v) {
      if (!state[v]) visit(visit, v);
    }
    std::reverse(order.begin(), order.end());
    EXPECT_EQ(topological_permutation(g), order);
  }
}

TEST(MedianReconstruct, StructureOnRandomTuples) {
  Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    const std::size_t d = 1 + rng.uniform_index(32);
    const auto tuple = random_five(d, rng);
    const auto report = median_reconstruct(tuple);
    ASSERT_EQ(report.output.dimension(), d);
    EXPECT_EQ(report.removed_symbols.size(), 3 * report.removed_cycle_count);
    EXPECT_TRUE(std::is_sorted(report.removed_symbols.begin(), report.removed_symbols.end()));
    // Removed symbols form the suffix.
    for (std::size_t i = 0; i < report.removed_symbols.size(); ++i) {
      EXPECT_EQ(report.output[d - report.removed_symbols.size() + i], report.removed_symbols[i]);
    }
    auto removal = remove_cycles(build_tournament(tuple));
    EXPECT_FALSE(has_alive_triangle(removal.graph));
    for (const auto& c : removal.removed_cycles) {
      EXPECT_TRUE(removal.graph.dimension() == d);
      EXPECT_TRUE(build_tournament(tuple).has_edge(c[0], c[1]));
    }
  }
}

TEST(MedianReconstruct, MajorityCopyWins) {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 2 + rng.uniform_index(20);
    const auto x = random_permutation(d, rng);
    auto tuple = five(x, x, x, random_permutation(d, rng), random_permutation(d, rng));
    rng.shuffle(tuple);
    const auto report = median_reconstruct(tuple);
    EXPECT_EQ(report.output, x);
    EXPECT_EQ(report.removed_cycle_count, 0u);
  }
}

TEST(MedianReconstruct, PointerOverloadMatches) {
  Rng rng(1);
  const auto tuple = random_five(9, rng);
  std::vector<const Permutation*> ptrs;
  for (const auto& p : tuple) ptrs.push_back(&p);
  EXPECT_EQ(median_reconstruct(tuple).output, median_reconstruct(std::span<const Permutation* const>(ptrs)).output);
}
