#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ulam/dataset.hpp"

namespace ulam {

/// Planted instance: k random centers, sizes[i] points per center, each point
/// the center after `radius` random character moves, plus uniformly random
/// outliers. The dataset is shuffled.
struct PlantedSpec {
  std::size_t k = 1;
  std::size_t d = 1;
  std::vector<std::size_t> sizes;
  std::size_t radius = 0;
  std::size_t outlier_count = 0;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument.
  void check() const;
};

struct PlantedInstance {
  Dataset data;
  std::vector<Permutation> centers;
  /// Per dataset point: its center index, or k for an outlier.
  std::vector<std::size_t> labels;
};

PlantedInstance generate_planted(const PlantedSpec& spec);

}  // namespace ulam
