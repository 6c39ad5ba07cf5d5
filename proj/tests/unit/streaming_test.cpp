#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ulam/clustering.hpp"
#include "ulam/error.hpp"
#include "ulam/planted.hpp"
#include "ulam/random.hpp"
#include "ulam/streaming.hpp"

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

StreamConfig desk_config(std::size_t n, std::size_t d, std::size_t k, std::uint64_t seed) {
  StreamConfig c;
  c.n_bound = n;
  c.dimension = d;
  c.k = k;
  c.seed = seed;
  c.beta = 0.1;
  c.lambda = 0.1;
  c.rho = 0.5;
  return c;
}

std::string snapshot_text(const StreamSketch& s) {
  std::ostringstream out;
  save_snapshot(out, s);
  return out.str();
}

}  // namespace

TEST(Grids, ShapeAndCoverage) {
  const auto ell = distance_grid(8, 0.1);
  EXPECT_EQ(ell.size(), static_cast<std::size_t>(std::ceil(std::log(8.0) / std::log(1.1))) + 1);
  EXPECT_GE(ell.back(), 8.0);
  EXPECT_LT(ell[ell.size() - 2], 8.0);
  const auto p = probability_grid(16, 0.1);
  EXPECT_EQ(p.size(), static_cast<std::size_t>(std::ceil(std::log(16.0) / std::log(1.1))) + 1);
  EXPECT_LE(p.back(), 1.0 / 16);
  EXPECT_EQ(probability_grid(1, 0.1), std::vector<double>{1.0});
  // Every l* in [1, d] has a grid point l <= l* < (1+gamma) l.
  for (double x = 1.0; x <= 8.0; x += 0.01) {
    bool covered = false;
    for (double g : ell) covered |= g <= x && x < 1.1 * g * (1 + 1e-12);
    ASSERT_TRUE(covered) << x;
  }
}

TEST(Sizing, CapsAndBounds) {
  StreamConfig c;
  c.k = 2;
  c.n_bound = 1024;
  c.dimension = 10;
  EXPECT_EQ(bucket_cap(c), 2000u);
  c.n_bound = 1;
  EXPECT_EQ(bucket_cap(c), 2u);
  EXPECT_EQ(ceil_log2(1), 1u);
  EXPECT_EQ(ceil_log2(1025), 11u);
  EXPECT_EQ(coreset_capacity(100, 10), 10u * (4 + 2));
  c.coreset_block = 7;
  EXPECT_EQ(coreset_block(c), 7u);
  c.coreset_block = 0;
  EXPECT_EQ(coreset_block(c), 1u);  // clamped to n_bound
}

TEST(Config, Validation) {
  StreamConfig c;
  c.gamma = 1.0;
  EXPECT_EQ(kind_of([&] { sketch_init(c); }), ErrorKind::InvalidConfig);
  c = StreamConfig{};
  c.k = 0;
  EXPECT_EQ(kind_of([&] { sketch_init(c); }), ErrorKind::InvalidConfig);
  c = StreamConfig{};
  c.beta = -1;
  EXPECT_EQ(kind_of([&] { sketch_init(c); }), ErrorKind::InvalidConfig);
}

TEST(Sketch, InitHasEmptyGrid) {
  StreamConfig c;
  c.n_bound = 16;
  c.dimension = 8;
  const auto s = sketch_init(c);
  EXPECT_EQ(s.buckets.size(), s.ell_grid.size() * s.p_grid.size());
  for (const auto& b : s.buckets) EXPECT_TRUE(b.members.empty());
  EXPECT_EQ(s.faraway.slot_count(), 0u);
  EXPECT_EQ(s.coreset.stored(), 0u);
  EXPECT_EQ(kind_of([&] { sketch_query(s); }), ErrorKind::EmptySketch);
}

TEST(Sketch, UpdateErrors) {
  StreamConfig c;
  c.n_bound = 1;
  c.dimension = 3;
  auto s = sketch_init(c);
  EXPECT_EQ(kind_of([&] { sketch_update(s, validate({1, 2})); }), ErrorKind::DimensionMismatch);
  sketch_update(s, validate({1, 2, 3}));
  EXPECT_EQ(kind_of([&] { sketch_update(s, validate({1, 2, 3})); }), ErrorKind::StreamOverflow);
}

TEST(Sketch, DuplicatesArePruned) {
  StreamConfig c;
  c.n_bound = 8;
  c.dimension = 5;
  auto s = sketch_init(c);
  const auto x = validate({2, 4, 1, 5, 3});
  sketch_update(s, x);
  sketch_update(s, x);
  EXPECT_EQ(s.bucket(0, 0).members.size(), 1u);
  EXPECT_EQ(s.faraway.members().size(), 1u);
}

TEST(Sketch, BucketResetsAtCap) {
  StreamConfig c;
  c.n_bound = 2;  // cap = 1 * 1^3 = 1
  c.dimension = 4;
  auto s = sketch_init(c);
  ASSERT_EQ(s.cap, 1u);
  sketch_update(s, validate({1, 2, 3, 4}));
  EXPECT_TRUE(s.bucket(0, 0).members.empty());
  EXPECT_EQ(s.bucket(0, 0).resets, 1u);
}

TEST(Sketch, PruningAndCapInvariantsHold) {
  const auto inst = generate_planted({3, 16, {40, 40, 40}, 3, 0, 4});
  auto s = sketch_init(desk_config(inst.data.size(), 16, 3, 9));
  for (std::size_t step = 0; step < inst.data.size(); ++step) {
    sketch_update(s, inst.data[step]);
    if (step % 15 != 14) continue;
    for (const auto& b : s.buckets) {
      ASSERT_LT(b.members.size(), s.cap);
      for (std::size_t i = 0; i < b.members.size(); ++i) {
        for (std::size_t j = i + 1; j < b.members.size(); ++j) {
          ASSERT_GE(static_cast<double>(ulam_distance(b.members[i]->perm, b.members[j]->perm)),
                    s.config.beta * b.ell);
        }
      }
    }
  }
  EXPECT_LE(s.peak_stored, s.space_bound());
  EXPECT_LE(s.faraway.slot_count(), faraway_bound(s.config));
}

TEST(Faraway, ConstantStreamIsSingleton) {
  auto s = sketch_init(desk_config(50, 6, 2, 1));
  const auto x = validate({6, 1, 5, 2, 4, 3});
  for (int i = 0; i < 50; ++i) sketch_update(s, x);
  EXPECT_EQ(s.faraway.members().size(), 1u);
}

TEST(Faraway, HitsEveryPlantedCluster) {
  const auto inst = generate_planted({2, 30, {100, 100}, 2, 0, 12});
  auto s = sketch_init(desk_config(200, 30, 2, 3));
  for (const auto& x : inst.data) sketch_update(s, x);
  for (const auto& center : inst.centers) {
    bool hit = false;
    for (const auto& m : s.faraway.members()) hit |= ulam_distance(m->perm, center) <= 2;
    EXPECT_TRUE(hit);
  }
}

TEST(Coreset, ExactBelowBlockSize) {
  StreamingCoreset c(2, 50, 1);
  Rng rng(1);
  std::vector<ItemRef> items;
  for (std::uint64_t i = 0; i < 40; ++i) {
    items.push_back(std::make_shared<const StreamItem>(StreamItem{i, random_permutation(7, rng)}));
    c.add(items.back());
  }
  const auto pts = c.points();
  ASSERT_EQ(pts.size(), 40u);
  for (const auto& p : pts) EXPECT_EQ(p.weight, 1.0);
  const std::vector<Permutation> y{random_permutation(7, rng)};
  std::vector<Permutation> raw;
  for (const auto& it : items) raw.push_back(it->perm);
  EXPECT_EQ(weighted_objective(pts, y), static_cast<double>(objective(Dataset(raw), y)));
}

TEST(Coreset, ConservesWeightAndStaysWithinCapacity) {
  const std::size_t n = 1000, block = 40;
  StreamingCoreset c(2, block, 5);
  const auto inst = generate_planted({2, 12, {500, 500}, 2, 0, 6});
  for (std::uint64_t i = 0; i < n; ++i) {
    c.add(std::make_shared<const StreamItem>(StreamItem{i, inst.data[i]}));
    ASSERT_NEAR(c.total_weight(), static_cast<double>(i + 1), 1e-6 * (i + 1));
    ASSERT_LE(c.stored(), coreset_capacity(n, block));
  }
  for (const auto& p : c.points()) EXPECT_GT(p.weight, 0.0);
  EXPECT_LT(c.stored(), n / 4);
}

TEST(Query, ConstantStream) {
  auto s = sketch_init(desk_config(30, 5, 1, 2));
  const auto x = validate({3, 5, 1, 2, 4});
  for (int i = 0; i < 30; ++i) sketch_update(s, x);
  const auto r = sketch_query(s);
  EXPECT_EQ(r.medians, std::vector<Permutation>{x});
  EXPECT_EQ(r.weighted_objective, 0.0);
}

TEST(Query, MatchesOfflineWithExactCoreset) {
  Rng rng(77);
  for (int t = 0; t < 5; ++t) {
    std::vector<Permutation> pts;
    for (int i = 0; i < 9; ++i) pts.push_back(random_permutation(6, rng));
    const Dataset data(pts);
    StreamConfig c;
    c.n_bound = 9;
    c.dimension = 6;
    c.seed = t;
    auto s = sketch_init(c);
    for (const auto& x : data) sketch_update(s, x);
    const auto stream = sketch_query(s);
    const auto offline = approx_k_median(data, 1);
    EXPECT_EQ(stream.weighted_objective, static_cast<double>(offline.objective));
  }
}

TEST(Query, BudgetAndFallback) {
  const auto inst = generate_planted({2, 10, {40, 40}, 2, 0, 3});
  auto s = sketch_init(desk_config(80, 10, 2, 3));
  for (const auto& x : inst.data) sketch_update(s, x);
  QueryOptions strict;
  strict.reconstruct_budget = 10;
  EXPECT_EQ(kind_of([&] { sketch_query(s, strict); }), ErrorKind::BudgetExceeded);
  strict.fallback = true;
  strict.tuple_budget = 10;
  const auto r = sketch_query(s, strict);
  EXPECT_EQ(r.reconstruction_mode, ReconstructionMode::Neighbourhood);
  EXPECT_EQ(r.selection_mode, SelectionMode::Greedy);
  EXPECT_EQ(r.medians.size(), 2u);
}

TEST(Snapshot, RoundTripIsBitIdentical) {
  const auto inst = generate_planted({2, 10, {40, 40}, 2, 0, 8});
  StreamConfig c = desk_config(100, 10, 2, 5);
  c.coreset_block = 16;
  auto s = sketch_init(c);
  for (std::size_t i = 0; i < 60; ++i) sketch_update(s, inst.data[i]);
  const std::string text = snapshot_text(s);
  std::istringstream in(text);
  auto restored = load_snapshot(in);
  EXPECT_EQ(snapshot_text(restored), text);
  QueryOptions q;
  q.fallback = true;
  const auto a = sketch_query(s, q);
  const auto b = sketch_query(restored, q);
  EXPECT_EQ(a.medians, b.medians);
  EXPECT_EQ(a.weighted_objective, b.weighted_objective);
  // Continuing both streams stays in lockstep.
  for (std::size_t i = 60; i < 80; ++i) {
    sketch_update(s, inst.data[i]);
    sketch_update(restored, inst.data[i]);
  }
  EXPECT_EQ(snapshot_text(restored), snapshot_text(s));
}

TEST(Snapshot, RejectsGarbage) {
  std::istringstream bad("ulam-sketch 2\n");
  EXPECT_EQ(kind_of([&] { load_snapshot(bad); }), ErrorKind::Parse);
  std::istringstream truncated("ulam-sketch 1\nconfig 10 3 1\n");
  EXPECT_EQ(kind_of([&] { load_snapshot(truncated); }), ErrorKind::Parse);
}

TEST(Determinism, SameSeedSameSketch) {
  const auto inst = generate_planted({2, 12, {50, 50}, 3, 0, 1});
  auto run = [&] {
    StreamConfig c = desk_config(100, 12, 2, 42);
    c.coreset_block = 20;
    auto s = sketch_init(c);
    for (const auto& x : inst.data) sketch_update(s, x);
    return snapshot_text(s);
  };
  EXPECT_EQ(run(), run());
}

TEST(OneMedian, ConstantStream) {
  StreamingOneMedian sm({40, 5, 0.1, 1, 0});
  const auto x = validate({2, 3, 1, 5, 4});
  for (int i = 0; i < 40; ++i) sm.update(x);
  const auto r = sm.query();
  EXPECT_EQ(r.median, x);
  EXPECT_EQ(r.weighted_objective, 0.0);
  EXPECT_EQ(sm.reservoir_capacity(), ceil_log2(40));
}

TEST(OneMedian, WithinTwiceOptAndSpace) {
  const auto inst = generate_planted({1, 6, {200}, 2, 0, 21});
  StreamingOneMedian sm({200, 6, 0.1, 21, 30});
  for (const auto& x : inst.data) sm.update(x);
  const auto r = sm.query();
  const auto opt = brute_force_k_median(inst.data, 1, 0.0).objective;
  EXPECT_LE(objective(inst.data, std::vector{r.median}), 2 * opt);
  EXPECT_LE(sm.peak_stored(), sm.space_bound());
  EXPECT_EQ(sm.items_seen(), 200u);
}

TEST(OneMedian, Errors) {
  StreamingOneMedian sm({1, 3, 0.1, 0, 0});
  EXPECT_EQ(kind_of([&] { sm.query(); }), ErrorKind::EmptySketch);
  EXPECT_EQ(kind_of([&] { sm.update(validate({1, 2})); }), ErrorKind::DimensionMismatch);
  sm.update(validate({1, 2, 3}));
  EXPECT_EQ(kind_of([&] { sm.update(validate({1, 2, 3})); }), ErrorKind::StreamOverflow);
}
