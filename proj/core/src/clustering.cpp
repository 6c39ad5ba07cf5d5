#include "ulam/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_set>

#include "ulam/combinatorics.hpp"
#include "ulam/error.hpp"
#include "ulam/parallel.hpp"
#include "ulam/tournament.hpp"

namespace ulam {

namespace {

void require_dimension(const Dataset& data, std::span<const Permutation> medians) {
  if (medians.empty()) raise(ErrorKind::EmptyMedianSet, "no medians given");
  for (const auto& m : medians) {
    if (m.dimension() != data.dimension()) {
      raise(ErrorKind::DimensionMismatch, "median dimension " + std::to_string(m.dimension()) +
                                              " vs dataset dimension " +
                                              std::to_string(data.dimension()));
    }
  }
}

void require_fraction(double p) {
  if (!(p >= 0.0 && p < 1.0)) raise(ErrorKind::InvalidArgument, "outlier fraction must be in [0,1)");
}

void require_budget(std::uint64_t needed, std::uint64_t budget, const std::string& what) {
  if (needed > budget) {
    raise(ErrorKind::BudgetExceeded,
          what + " needs " + (needed == kSaturated ? std::string(">1.8e19") : std::to_string(needed)) +
              " evaluations, budget is " + std::to_string(budget));
  }
}

std::vector<std::uint32_t> nearest_distances(const Dataset& data, std::span<const Permutation> medians,
                                             std::vector<std::size_t>* assignment) {
  std::vector<std::uint32_t> best(data.size());
  if (assignment) assignment->assign(data.size(), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::uint32_t b = std::numeric_limits<std::uint32_t>::max();
    for (std::size_t j = 0; j < medians.size(); ++j) {
      const auto dist = static_cast<std::uint32_t>(ulam_distance(data[i], medians[j]));
      if (dist < b) {
        b = dist;
        if (assignment) (*assignment)[i] = j;
      }
    }
    best[i] = b;
  }
  return best;
}

std::vector<std::size_t> choose_outliers(std::span<const std::uint32_t> dist, std::size_t drop) {
  std::vector<std::size_t> order(dist.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dist[a] != dist[b]) return dist[a] > dist[b];
    return a > b;
  });
  order.resize(drop);
  std::sort(order.begin(), order.end());
  return order;
}

std::vector<const Permutation*> distinct_points(const Dataset& data) {
  std::unordered_set<Permutation, PermutationHash> seen;
  std::vector<const Permutation*> out;
  for (const auto& p : data) {
    if (seen.insert(p).second) out.push_back(&p);
  }
  return out;
}

std::vector<const Permutation*> pointers(const Dataset& data) {
  std::vector<const Permutation*> out;
  out.reserve(data.size());
  for (const auto& p : data) out.push_back(&p);
  return out;
}

std::vector<std::size_t> unrank_combination(std::uint64_t rank, std::size_t n, std::size_t r) {
  std::vector<std::size_t> idx(r);
  std::size_t v = 0;
  for (std::size_t slot = 0; slot < r; ++slot) {
    for (;; ++v) {
      const std::uint64_t count = binomial(n - 1 - v, r - 1 - slot);
      if (rank < count) break;
      rank -= count;
    }
    idx[slot] = v++;
  }
  return idx;
}

struct SubsetSearch {
  const DistanceTable& table;
  std::span<const double> weights;
  std::size_t k;
  std::size_t drop;

  double score(const std::vector<std::uint32_t>& mins, std::vector<std::uint32_t>& scratch) const {
    if (drop == 0) {
      double total = 0.0;
      if (weights.empty()) {
        std::uint64_t s = 0;
        for (auto m : mins) s += m;
        return static_cast<double>(s);
      }
      for (std::size_t c = 0; c < mins.size(); ++c) total += weights[c] * mins[c];
      return total;
    }
    scratch = mins;
    const std::size_t keep = scratch.size() - drop;
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(keep), scratch.end());
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < keep; ++c) s += scratch[c];
    return static_cast<double>(s);
  }

  struct Best {
    double value = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> rows;
  };

  void dfs(std::vector<std::size_t>& rows, std::vector<std::vector<std::uint32_t>>& mins,
           std::vector<std::uint32_t>& scratch, Best& best) const {
    const std::size_t depth = rows.size();
    const double value = score(mins[depth - 1], scratch);
    if (value < best.value) {
      best.value = value;
      best.rows = rows;
    }
    if (depth == k) return;
    for (std::size_t next = rows.back() + 1; next < table.rows; ++next) {
      auto& dst = mins[depth];
      const auto& src = mins[depth - 1];
      const std::uint32_t* row = &table.values[next * table.cols];
      for (std::size_t c = 0; c < table.cols; ++c) dst[c] = std::min(src[c], row[c]);
      rows.push_back(next);
      dfs(rows, mins, scratch, best);
      rows.pop_back();
    }
  }

  Best subtree(std::size_t first) const {
    Best best;
    std::vector<std::size_t> rows{first};
    std::vector<std::vector<std::uint32_t>> mins(k, std::vector<std::uint32_t>(table.cols));
    std::copy_n(&table.values[first * table.cols], table.cols, mins[0].begin());
    std::vector<std::uint32_t> scratch;
    dfs(rows, mins, scratch, best);
    return best;
  }
};

ClusteringResult select_from_candidates(const Dataset& data, const std::vector<Permutation>& candidates,
                                        std::size_t k, double p, std::uint64_t tuple_budget) {
  require_budget(binomial(candidates.size(), std::min(k, candidates.size())), tuple_budget,
                 "subset search over " + std::to_string(candidates.size()) + " candidates");
  std::vector<const Permutation*> cand_ptrs;
  cand_ptrs.reserve(candidates.size());
  for (const auto& c : candidates) cand_ptrs.push_back(&c);
  const auto points = pointers(data);
  const DistanceTable table = distance_table(cand_ptrs, points);
  const auto rows = best_row_subset(table, {}, k, outlier_count(data.size(), p), tuple_budget);
  MedianSet medians;
  for (auto r : rows) medians.push_back(candidates[r]);
  return evaluate_medians(data, std::move(medians), p);
}

}  // namespace

std::size_t outlier_count(std::size_t n, double p) {
  require_fraction(p);
  // The epsilon absorbs representation error in fractions such as 1/6 * 6.
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

std::uint64_t objective(const Dataset& data, std::span<const Permutation> medians) {
  require_dimension(data, medians);
  std::uint64_t total = 0;
  for (auto v : nearest_distances(data, medians, nullptr)) total += v;
  return total;
}

OutlierObjective objective_with_outliers(const Dataset& data, std::span<const Permutation> medians,
                                         double p) {
  require_dimension(data, medians);
  const std::size_t drop = outlier_count(data.size(), p);
  const auto dist = nearest_distances(data, medians, nullptr);
  OutlierObjective out;
  out.outliers = choose_outliers(dist, drop);
  std::uint64_t total = 0;
  for (auto v : dist) total += v;
  for (auto i : out.outliers) total -= dist[i];
  out.objective = total;
  return out;
}

ClusteringResult evaluate_medians(const Dataset& data, MedianSet medians, double p) {
  require_dimension(data, medians);
  ClusteringResult result;
  const auto dist = nearest_distances(data, medians, &result.assignment);
  result.outliers = choose_outliers(dist, outlier_count(data.size(), p));
  std::uint64_t total = 0;
  for (auto v : dist) total += v;
  for (auto i : result.outliers) total -= dist[i];
  result.objective = total;
  result.medians = std::move(medians);
  return result;
}

DistanceTable distance_table(std::span<const Permutation* const> candidates,
                             std::span<const Permutation* const> points) {
  DistanceTable table;
  table.rows = candidates.size();
  table.cols = points.size();
  table.values.resize(table.rows * table.cols);
  parallel_for(table.rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      for (std::size_t c = 0; c < table.cols; ++c) {
        table.values[r * table.cols + c] =
            static_cast<std::uint32_t>(ulam_distance(*candidates[r], *points[c]));
      }
    }
  });
  return table;
}

std::vector<std::size_t> best_row_subset(const DistanceTable& table, std::span<const double> weights,
                                         std::size_t k, std::size_t drop, std::uint64_t budget) {
  if (k == 0) raise(ErrorKind::InvalidArgument, "k must be positive");
  if (table.rows == 0) raise(ErrorKind::EmptyMedianSet, "no candidates");
  if (!weights.empty() && weights.size() != table.cols) {
    raise(ErrorKind::InvalidArgument, "weight count does not match point count");
  }
  if (drop > 0 && !weights.empty()) {
    raise(ErrorKind::InvalidArgument, "outlier exclusion requires unit weights");
  }
  if (drop >= table.cols && table.cols > 0) {
    return {0};
  }
  const std::size_t depth = std::min(k, table.rows);
  require_budget(binomial(table.rows, depth), budget,
                 "subset search over " + std::to_string(table.rows) + " candidates");
  SubsetSearch search{table, weights, depth, drop};
  std::vector<SubsetSearch::Best> per_first(table.rows);
  parallel_for(table.rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t first = begin; first < end; ++first) per_first[first] = search.subtree(first);
  });
  SubsetSearch::Best best;
  for (auto& b : per_first) {
    if (b.value < best.value) best = std::move(b);
  }
  return best.rows;
}

std::vector<Permutation> reconstruct_all_5_subsets(std::span<const Permutation* const> pool,
                                                   std::uint64_t budget) {
  const std::size_t n = pool.size();
  if (n < 5) return {};
  const std::uint64_t total = binomial(n, 5);
  require_budget(total, budget, "median reconstruction over " + std::to_string(n) + " inputs");
  std::vector<std::optional<Permutation>> slots(total);
  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    auto idx = unrank_combination(begin, n, 5);
    std::array<const Permutation*, 5> chosen;
    for (std::size_t r = begin; r < end; ++r) {
      for (std::size_t i = 0; i < 5; ++i) chosen[i] = pool[idx[i]];
      slots[r] = median_reconstruct(std::span<const Permutation* const>(chosen)).output;
      next_combination(idx, n);
    }
  });
  std::vector<Permutation> out;
  out.reserve(total);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

MedianSet best_from_input(const Dataset& data, std::size_t k, const EnumerationLimits& limits) {
  if (k == 0) raise(ErrorKind::InvalidArgument, "k must be positive");
  const auto distinct = distinct_points(data);
  const DistanceTable table = distance_table(distinct, pointers(data));
  const auto rows = best_row_subset(table, {}, k, 0, limits.tuple_budget);
  MedianSet out;
  for (auto r : rows) out.push_back(*distinct[r]);
  return out;
}

Permutation approx_median(const Dataset& data, const EnumerationLimits& limits) {
  Permutation best = best_from_input(data, 1, limits).front();
  if (data.size() < 5) return best;
  const std::size_t n = data.size();
  const std::uint64_t total = binomial(n, 5);
  require_budget(total, limits.reconstruct_budget,
                 "median reconstruction over " + std::to_string(n) + " inputs");
  const auto points = pointers(data);
  std::uint64_t best_value = objective(data, std::span<const Permutation>(&best, 1));

  // Each chunk keeps its earliest minimum; chunks are reduced in rank order
  // so the overall winner is the earliest candidate in generation order.
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::uint64_t>(worker_count() * 4, total));
  const std::uint64_t chunk = (total + workers - 1) / workers;
  std::vector<std::uint64_t> chunk_value(workers, std::numeric_limits<std::uint64_t>::max());
  std::vector<std::optional<Permutation>> chunk_best(workers);
  parallel_for(workers, [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      if (begin >= end) continue;
      auto idx = unrank_combination(begin, n, 5);
      std::array<const Permutation*, 5> chosen;
      for (std::uint64_t r = begin; r < end; ++r) {
        for (std::size_t i = 0; i < 5; ++i) chosen[i] = points[idx[i]];
        auto candidate = median_reconstruct(std::span<const Permutation* const>(chosen)).output;
        std::uint64_t value = 0;
        for (const auto* x : points) value += ulam_distance(*x, candidate);
        if (value < chunk_value[w]) {
          chunk_value[w] = value;
          chunk_best[w] = std::move(candidate);
        }
        next_combination(idx, n);
      }
    }
  });
  for (std::size_t w = 0; w < workers; ++w) {
    if (chunk_best[w] && chunk_value[w] < best_value) {
      best_value = chunk_value[w];
      best = std::move(*chunk_best[w]);
    }
  }
  return best;
}

std::vector<Permutation> offline_candidates(const Dataset& data, const EnumerationLimits& limits) {
  std::vector<Permutation> out;
  std::unordered_set<Permutation, PermutationHash> seen;
  for (const auto* p : distinct_points(data)) {
    seen.insert(*p);
    out.push_back(*p);
  }
  const auto points = pointers(data);
  for (auto& r : reconstruct_all_5_subsets(points, limits.reconstruct_budget)) {
    if (seen.insert(r).second) out.push_back(std::move(r));
  }
  return out;
}

ClusteringResult approx_k_median(const Dataset& data, std::size_t k, const EnumerationLimits& limits) {
  return approx_k_median_outliers(data, k, 0.0, limits);
}

ClusteringResult approx_k_median_outliers(const Dataset& data, std::size_t k, double p,
                                          const EnumerationLimits& limits) {
  require_fraction(p);
  if (k == 0 || k > data.size()) {
    raise(ErrorKind::InvalidArgument, "k must lie in [1, n]");
  }
  // Fail fast: the family always contains the distinct inputs.
  const auto distinct = distinct_points(data).size();
  require_budget(binomial(distinct, std::min(k, distinct)), limits.tuple_budget,
                 "subset search over at least " + std::to_string(distinct) + " candidates");
  const auto candidates = offline_candidates(data, limits);
  return select_from_candidates(data, candidates, k, p, limits.tuple_budget);
}

std::vector<Permutation> all_permutations(std::size_t d) {
  std::vector<Symbol> s(d);
  std::iota(s.begin(), s.end(), Symbol{1});
  std::vector<Permutation> out;
  do {
    out.push_back(validate(std::span<const Symbol>(s)));
  } while (std::next_permutation(s.begin(), s.end()));
  return out;
}

ClusteringResult brute_force_k_median(const Dataset& data, std::size_t k, double p,
                                      std::uint64_t budget) {
  require_fraction(p);
  if (k == 0) raise(ErrorKind::InvalidArgument, "k must be positive");
  const std::size_t d = data.dimension();
  std::uint64_t factorial = 1;
  for (std::size_t i = 2; i <= d && factorial != kSaturated; ++i) {
    factorial = factorial > kSaturated / i ? kSaturated : factorial * i;
  }
  const std::uint64_t tuples =
      factorial == kSaturated ? kSaturated : binomial(factorial, std::min<std::uint64_t>(k, factorial));
  require_budget(tuples, budget, "brute force over all " + std::to_string(d) + "! permutations");
  const auto candidates = all_permutations(d);
  return select_from_candidates(data, candidates, k, p, budget);
}

}  // namespace ulam
