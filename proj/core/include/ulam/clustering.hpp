#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ulam/dataset.hpp"
#include "ulam/permutation.hpp"

namespace ulam {

using MedianSet = std::vector<Permutation>;

/// Analysis constants of the 1.999 guarantee. They never steer control flow;
/// they are kept so reports can quote the guarantee they correspond to.
struct ApproxConstants {
  static constexpr double epsilon = 0.03319;
  static constexpr double alpha = epsilon / 11.0;
};

struct EnumerationLimits {
  /// Cap on C(|candidates|, k) for the subset search.
  std::uint64_t tuple_budget = 100'000'000;
  /// Cap on the number of 5-subsets fed to median reconstruction.
  std::uint64_t reconstruct_budget = 100'000'000;
};

struct ClusteringResult {
  MedianSet medians;
  /// Per dataset index: index into `medians` of the nearest median, lowest
  /// index on ties. Outliers are assigned too.
  std::vector<std::size_t> assignment;
  /// Sum of nearest-median distances over non-outlier points.
  std::uint64_t objective = 0;
  /// Excluded dataset indices, ascending. Empty when p = 0.
  std::vector<std::size_t> outliers;
};

struct OutlierObjective {
  std::uint64_t objective = 0;
  std::vector<std::size_t> outliers;
};

/// Number of points an outlier fraction p excludes: floor(p * n).
std::size_t outlier_count(std::size_t n, double p);

std::uint64_t objective(const Dataset& data, std::span<const Permutation> medians);

/// Drops the floor(p*n) points farthest from their nearest median (ties:
/// higher dataset index dropped first) and sums the rest.
OutlierObjective objective_with_outliers(const Dataset& data, std::span<const Permutation> medians,
                                         double p);

/// Full result (assignment, objective, outliers) for a fixed median set.
ClusteringResult evaluate_medians(const Dataset& data, MedianSet medians, double p = 0.0);

/// Best subset of at most k distinct input points. Ties: lexicographically
/// smallest tuple of distinct-point indices (first-occurrence order).
MedianSet best_from_input(const Dataset& data, std::size_t k, const EnumerationLimits& limits = {});

/// Best of best_from_input(S,1) and the reconstructions of every index
/// 5-combination of S. Falls back to best_from_input when n < 5.
Permutation approx_median(const Dataset& data, const EnumerationLimits& limits = {});

/// Best subset of at most k candidates from distinct(S) followed by all
/// 5-combination reconstructions.
ClusteringResult approx_k_median(const Dataset& data, std::size_t k,
                                 const EnumerationLimits& limits = {});

/// As approx_k_median, selecting by the outlier objective.
ClusteringResult approx_k_median_outliers(const Dataset& data, std::size_t k, double p,
                                          const EnumerationLimits& limits = {});

/// Exact optimum over all k-subsets of the d! permutations. Throws
/// BudgetExceeded when C(d!, k) exceeds `budget`.
ClusteringResult brute_force_k_median(const Dataset& data, std::size_t k, double p,
                                      std::uint64_t budget = 1'000'000);

/// Every permutation of 1..d in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t d);

/// Candidate family shared by the offline algorithms: distinct inputs (first
/// occurrence order) then reconstructions of all index 5-combinations in
/// lexicographic order, duplicates removed.
std::vector<Permutation> offline_candidates(const Dataset& data, const EnumerationLimits& limits);

/// Reconstruction of every 5-combination of `pool`, in lexicographic order.
std::vector<Permutation> reconstruct_all_5_subsets(std::span<const Permutation* const> pool,
                                                   std::uint64_t budget);

/// Distances laid out row-major: row per candidate, column per point.
struct DistanceTable {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint32_t> values;

  std::uint32_t at(std::size_t r, std::size_t c) const noexcept { return values[r * cols + c]; }
};

DistanceTable distance_table(std::span<const Permutation* const> candidates,
                             std::span<const Permutation* const> points);

/// Lexicographically first subset of at most k rows minimizing the sum over
/// columns of (weight * row-minimum) after dropping the `drop` largest
/// per-column minima. Returns row indices, ascending.
std::vector<std::size_t> best_row_subset(const DistanceTable& table, std::span<const double> weights,
                                         std::size_t k, std::size_t drop, std::uint64_t budget);

}  // namespace ulam
