#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "ulam/clustering.hpp"
#include "ulam/combinatorics.hpp"
#include "ulam/error.hpp"
#include "ulam/parallel.hpp"
#include "ulam/streaming.hpp"
#include "ulam/tournament.hpp"

namespace ulam {

namespace {

// Each retained item with its four nearest retained neighbours (distance,
// then stream order), one reconstruction per item.
std::vector<Permutation> neighbourhood_reconstructions(std::span<const Permutation* const> pool) {
  const std::size_t n = pool.size();
  std::vector<Permutation> out;
  if (n < 5) return out;
  const DistanceTable table = distance_table(pool, pool);
  std::vector<std::optional<Permutation>> slots(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = begin; i < end; ++i) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::partial_sort(order.begin(), order.begin() + 5, order.end(), [&](std::size_t a, std::size_t b) {
        const auto da = a == i ? 0u : table.at(i, a) + 1;
        const auto db = b == i ? 0u : table.at(i, b) + 1;
        return da != db ? da < db : a < b;
      });
      std::array<std::size_t, 5> chosen_idx;
      std::copy_n(order.begin(), 5, chosen_idx.begin());
      std::sort(chosen_idx.begin(), chosen_idx.end());
      std::array<const Permutation*, 5> chosen;
      for (std::size_t j = 0; j < 5; ++j) chosen[j] = pool[chosen_idx[j]];
      slots[i] = median_reconstruct(std::span<const Permutation* const>(chosen)).output;
    }
  });
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::vector<std::size_t> greedy_rows(const DistanceTable& table, std::span<const double> weights,
                                     std::size_t k) {
  std::vector<std::size_t> chosen;
  std::vector<std::uint32_t> mins(table.cols, std::numeric_limits<std::uint32_t>::max());
  std::vector<char> used(table.rows, 0);
  const std::size_t steps = std::min(k, table.rows);
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<double> score(table.rows, std::numeric_limits<double>::infinity());
    parallel_for(table.rows, [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        if (used[r]) continue;
        double s = 0.0;
        for (std::size_t c = 0; c < table.cols; ++c) s += weights[c] * std::min(mins[c], table.at(r, c));
        score[r] = s;
      }
    });
    std::size_t best = table.rows;
    for (std::size_t r = 0; r < table.rows; ++r) {
      if (!used[r] && (best == table.rows || score[r] < score[best])) best = r;
    }
    used[best] = 1;
    chosen.push_back(best);
    for (std::size_t c = 0; c < table.cols; ++c) mins[c] = std::min(mins[c], table.at(best, c));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

std::vector<ItemRef> sample_union(const StreamSketch& sketch) {
  std::vector<ItemRef> out;
  for (const auto& b : sketch.buckets) out.insert(out.end(), b.members.begin(), b.members.end());
  std::sort(out.begin(), out.end(), [](const ItemRef& a, const ItemRef& b) { return a->index < b->index; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ItemRef& a, const ItemRef& b) { return a->index == b->index; }),
            out.end());
  return out;
}

CandidateFamily query_candidates(const StreamSketch& sketch, const QueryOptions& options) {
  CandidateFamily family;
  const auto sample = sample_union(sketch);
  const auto faraway = sketch.faraway.members();
  family.sample_size = sample.size();
  family.faraway_size = faraway.size();
  if (sample.empty() && faraway.empty()) raise(ErrorKind::EmptySketch, "no retained permutations");

  std::unordered_set<Permutation, PermutationHash> seen;
  auto push = [&](const Permutation& p) {
    if (seen.insert(p).second) family.candidates.push_back(p);
  };
  for (const auto& r : sample) push(r->perm);
  for (const auto& f : faraway) push(f->perm);

  std::vector<const Permutation*> pool;
  pool.reserve(sample.size());
  for (const auto& r : sample) pool.push_back(&r->perm);
  std::vector<Permutation> recon;
  if (binomial(pool.size(), 5) <= options.reconstruct_budget) {
    recon = reconstruct_all_5_subsets(pool, options.reconstruct_budget);
  } else if (options.fallback) {
    family.mode = ReconstructionMode::Neighbourhood;
    recon = neighbourhood_reconstructions(pool);
  } else {
    raise(ErrorKind::BudgetExceeded, "reconstructing all 5-subsets of " + std::to_string(pool.size()) +
                                         " sampled permutations exceeds budget " +
                                         std::to_string(options.reconstruct_budget));
  }
  family.reconstructions = recon.size();
  for (const auto& r : recon) push(r);
  return family;
}

double weighted_objective(std::span<const WeightedItem> coreset, std::span<const Permutation> medians) {
  if (medians.empty()) raise(ErrorKind::EmptyMedianSet, "no medians given");
  double total = 0.0;
  for (const auto& w : coreset) {
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& m : medians) best = std::min(best, ulam_distance(w.item->perm, m));
    total += w.weight * static_cast<double>(best);
  }
  return total;
}

StreamResult sketch_query(const StreamSketch& sketch, const QueryOptions& options) {
  CandidateFamily family = query_candidates(sketch, options);
  const auto coreset = sketch.coreset.points();
  if (coreset.empty()) raise(ErrorKind::EmptySketch, "coreset is empty");

  std::vector<const Permutation*> cand_ptrs, point_ptrs;
  for (const auto& c : family.candidates) cand_ptrs.push_back(&c);
  std::vector<double> weights;
  for (const auto& w : coreset) {
    point_ptrs.push_back(&w.item->perm);
    weights.push_back(w.weight);
  }
  const DistanceTable table = distance_table(cand_ptrs, point_ptrs);

  StreamResult result;
  const std::size_t k = sketch.config.k;
  std::vector<std::size_t> rows;
  if (binomial(table.rows, std::min(k, table.rows)) <= options.tuple_budget) {
    rows = best_row_subset(table, weights, k, 0, options.tuple_budget);
  } else if (options.fallback) {
    result.selection_mode = SelectionMode::Greedy;
    rows = greedy_rows(table, weights, k);
  } else {
    raise(ErrorKind::BudgetExceeded, "k-tuple search over " + std::to_string(table.rows) +
                                         " candidates exceeds budget " + std::to_string(options.tuple_budget));
  }
  for (auto r : rows) result.medians.push_back(family.candidates[r]);
  double total = 0.0;
  for (std::size_t c = 0; c < table.cols; ++c) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (auto r : rows) best = std::min(best, table.at(r, c));
    total += weights[c] * best;
  }
  result.weighted_objective = total;
  result.sample_size = family.sample_size;
  result.faraway_size = family.faraway_size;
  result.coreset_size = coreset.size();
  result.candidate_count = family.candidates.size();
  result.reconstructions = family.reconstructions;
  result.reconstruction_mode = family.mode;
  return result;
}

}  // namespace ulam
