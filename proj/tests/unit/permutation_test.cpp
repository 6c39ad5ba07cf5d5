#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ulam/error.hpp"
#include "ulam/permutation.hpp"
#include "ulam/random.hpp"

using namespace ulam;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an ulam::Error";
  return ErrorKind::Io;
}

}  // namespace

TEST(Validate, AcceptsBijections) {
  EXPECT_EQ(validate({1, 2, 3}).dimension(), 3u);
  const auto p = validate({3, 1, 2});
  EXPECT_EQ(p[0], 3u);
  EXPECT_EQ(p.position_of(3), 0u);
  EXPECT_EQ(p.position_of(2), 2u);
  EXPECT_EQ(p.to_string(), "3 1 2");
}

TEST(Validate, RejectsDuplicatesRangeAndEmpty) {
  EXPECT_EQ(kind_of([] { validate({2, 2, 1}); }), ErrorKind::NotBijection);
  EXPECT_EQ(kind_of([] { validate({1, 4, 2}); }), ErrorKind::NotBijection);
  EXPECT_EQ(kind_of([] { validate({0, 1}); }), ErrorKind::NotBijection);
  EXPECT_EQ(kind_of([] { validate(std::vector<Symbol>{}); }), ErrorKind::DimensionZero);
  try {
    validate({2, 2, 1});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(Lcs, SmallCases) {
  EXPECT_EQ(lcs_length(validate({1, 2, 3, 4}), validate({1, 2, 3, 4})), 4u);
  EXPECT_EQ(lcs_length(validate({1, 2, 3, 4}), validate({4, 3, 2, 1})), 1u);
  EXPECT_EQ(lcs_length_oracle(validate({2, 1}), validate({1, 2})), 1u);
  EXPECT_EQ(lcs_length_oracle(validate({1, 3, 2, 4}), validate({1, 2, 3, 4})), 3u);
  EXPECT_EQ(lcs_length(validate({1}), validate({1})), 1u);
}

TEST(Lcs, DimensionMismatch) {
  EXPECT_EQ(kind_of([] { lcs_length(validate({1, 2}), validate({1, 2, 3})); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { lcs_length_oracle(validate({1}), validate({2, 1})); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { ulam_distance(validate({1}), validate({2, 1})); }), ErrorKind::DimensionMismatch);
}

// Values computed once by an independent textbook LCS program.
TEST(Lcs, FrozenOracleValues) {
  struct Case {
    std::vector<Symbol> x, y;
    std::size_t lcs;
  };
  const std::vector<Case> cases = {
      {{2, 7, 5, 6, 8, 1, 3, 4}, {6, 7, 4, 1, 2, 8, 3, 5}, 3},
      {{4, 7, 3, 6, 8, 5, 1, 2}, {8, 3, 5, 1, 4, 7, 6, 2}, 4},
      {{14, 4, 7, 3, 9, 8, 5, 16, 15, 12, 1, 10, 11, 2, 13, 6}, {6, 15, 16, 11, 1, 2, 5, 7, 10, 14, 4, 9, 8, 13, 12, 3}, 5},
      {{6, 11, 8, 10, 13, 15, 14, 4, 16, 5, 2, 9, 3, 1, 12, 7}, {9, 16, 8, 1, 6, 5, 11, 3, 4, 12, 14, 10, 15, 2, 13, 7}, 6},
      {{5, 2, 24, 23, 27, 31, 8, 30, 28, 12, 10, 22, 19, 25, 4, 1, 3, 11, 16, 29, 21, 9, 18, 7, 26, 15, 20, 6, 13, 17, 32, 14},
       {11, 2, 19, 9, 6, 16, 22, 23, 30, 29, 24, 1, 10, 31, 3, 20, 7, 14, 25, 21, 5, 28, 15, 18, 4, 12, 26, 8, 32, 17, 13, 27},
       9},
  };
  for (const auto& c : cases) {
    const auto x = validate(std::vector<Symbol>(c.x));
    const auto y = validate(std::vector<Symbol>(c.y));
    EXPECT_EQ(lcs_length(x, y), c.lcs);
    EXPECT_EQ(lcs_length_oracle(x, y), c.lcs);
    EXPECT_EQ(ulam_distance(x, y), x.dimension() - c.lcs);
  }
}

TEST(Ulam, KnownDistances) {
  EXPECT_EQ(ulam_distance(validate({1, 2, 3, 4}), validate({2, 3, 4, 1})), 1u);
  EXPECT_EQ(ulam_distance(validate({3, 1, 2}), validate({1, 2, 3})), 1u);
  EXPECT_EQ(ulam_distance(validate({1, 2, 3}), validate({3, 2, 1})), 2u);
  const auto x = validate({4, 1, 3, 2});
  EXPECT_EQ(ulam_distance(x, x), 0u);
}

TEST(Ulam, ExhaustiveAgreementWithOracleUpToFive) {
  for (std::size_t d = 1; d <= 5; ++d) {
    std::vector<Symbol> base(d);
    std::iota(base.begin(), base.end(), 1u);
    std::vector<Permutation> all;
    do {
      all.push_back(validate(std::span<const Symbol>(base)));
    } while (std::next_permutation(base.begin(), base.end()));
    for (const auto& x : all) {
      for (const auto& y : all) ASSERT_EQ(lcs_length(x, y), lcs_length_oracle(x, y));
    }
  }
}

TEST(Ulam, MetricPropertiesOnRandomTriples) {
  Rng rng(7);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t d = 1 + rng.uniform_index(64);
    const auto x = random_permutation(d, rng);
    const auto y = random_permutation(d, rng);
    const auto z = random_permutation(d, rng);
    ASSERT_EQ(ulam_distance(x, y), ulam_distance(y, x));
    ASSERT_LE(ulam_distance(x, z), ulam_distance(x, y) + ulam_distance(y, z));
    ASSERT_EQ(ulam_distance(x, y) == 0, x == y);
    ASSERT_EQ(lcs_length(x, y), lcs_length_oracle(x, y));
  }
}

TEST(Ulam, OneMoveChangesDistanceByAtMostOne) {
  Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const auto x = random_permutation(2 + rng.uniform_index(30), rng);
    const auto y = apply_random_move(x, rng);
    EXPECT_EQ(ulam_distance(x, y), 1u);
  }
}

TEST(Permutation, IdentityOrderingAndHash) {
  const auto id = Permutation::identity(4);
  EXPECT_EQ(id, validate({1, 2, 3, 4}));
  EXPECT_LT(validate({1, 2, 3}), validate({1, 3, 2}));
  std::unordered_set<Permutation, PermutationHash> set{id, validate({1, 2, 3, 4}), validate({2, 1, 3, 4})};
  EXPECT_EQ(set.size(), 2u);
}

TEST(Random, DeterministicAndPortableDraws) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  Rng c(1);
  for (int i = 0; i < 1000; ++i) {
    ASSERT_LT(c.uniform_index(7), 7u);
    const double u = c.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
  Rng s(3);
  const auto saved = s.state();
  const auto first = s.next_u64();
  s.set_state(saved);
  EXPECT_EQ(s.next_u64(), first);
  EXPECT_NE(derive_seed(5, 1), derive_seed(5, 2));
}

TEST(Random, MoveIsNoOpInDimensionOne) {
  Rng rng(0);
  EXPECT_EQ(apply_random_move(validate({1}), rng), validate({1}));
}
