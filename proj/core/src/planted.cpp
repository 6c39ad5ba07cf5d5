#include <numeric>
#include <string>

#include "ulam/error.hpp"
#include "ulam/planted.hpp"
#include "ulam/random.hpp"

namespace ulam {

void PlantedSpec::check() const {
  auto fail = [](const std::string& m) { raise(ErrorKind::InvalidArgument, m); };
  if (k < 1) fail("k must be >= 1");
  if (d < 1) fail("d must be >= 1");
  if (sizes.size() != k) fail("need one size per cluster");
  for (auto s : sizes) {
    if (s == 0) fail("cluster sizes must be positive");
  }
  if (radius > 0 && radius >= d) fail("radius must be < d");
}

PlantedInstance generate_planted(const PlantedSpec& spec) {
  spec.check();
  Rng rng(spec.seed);
  std::vector<Permutation> centers;
  for (std::size_t i = 0; i < spec.k; ++i) centers.push_back(random_permutation(spec.d, rng));

  std::vector<std::pair<Permutation, std::size_t>> rows;
  for (std::size_t c = 0; c < spec.k; ++c) {
    for (std::size_t j = 0; j < spec.sizes[c]; ++j) {
      Permutation p = centers[c];
      for (std::size_t m = 0; m < spec.radius; ++m) p = apply_random_move(p, rng);
      rows.emplace_back(std::move(p), c);
    }
  }
  for (std::size_t j = 0; j < spec.outlier_count; ++j) rows.emplace_back(random_permutation(spec.d, rng), spec.k);
  rng.shuffle(rows);

  std::vector<Permutation> points;
  std::vector<std::size_t> labels;
  points.reserve(rows.size());
  for (auto& [p, label] : rows) {
    points.push_back(std::move(p));
    labels.push_back(label);
  }
  return {Dataset(std::move(points)), std::move(centers), std::move(labels)};
}

}  // namespace ulam
