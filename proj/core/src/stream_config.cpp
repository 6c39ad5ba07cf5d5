#include <algorithm>
#include <cmath>
#include <string>

#include "ulam/combinatorics.hpp"
#include "ulam/error.hpp"
#include "ulam/streaming.hpp"

namespace ulam {

void StreamConfig::check() const {
  auto fail = [](const std::string& m) { raise(ErrorKind::InvalidConfig, m); };
  if (n_bound < 1) fail("n_bound must be >= 1");
  if (dimension < 1) fail("dimension must be >= 1");
  if (k < 1) fail("k must be >= 1");
  if (!(beta > 0.0)) fail("beta must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma must lie in (0,1)");
  if (!(lambda > 0.0 && lambda < 1.0)) fail("lambda must lie in (0,1)");
  if (!(kappa > 0.0 && kappa < 1.0)) fail("kappa must lie in (0,1)");
  if (!(rho > 0.0)) fail("rho must be positive");
}

std::size_t ceil_log2(std::uint64_t n) noexcept {
  std::size_t bits = 0;
  std::uint64_t v = 1;
  while (v < std::max<std::uint64_t>(n, 2)) {
    v <<= 1;
    ++bits;
  }
  return bits;
}

std::vector<double> distance_grid(std::size_t d, double gamma) {
  std::vector<double> grid{1.0};
  while (grid.back() < static_cast<double>(d)) grid.push_back(grid.back() * (1.0 + gamma));
  return grid;
}

std::vector<double> probability_grid(std::size_t n, double gamma) {
  std::vector<double> grid{1.0};
  const double floor_p = 1.0 / static_cast<double>(n);
  while (grid.back() > floor_p) grid.push_back(grid.back() / (1.0 + gamma));
  return grid;
}

std::size_t bucket_cap(const StreamConfig& config) {
  const std::size_t l = ceil_log2(config.n_bound);
  return config.k * l * l * l;
}

namespace {

std::uint64_t saturating_ceil(double v) {
  if (!(v < 1.8e19)) return kSaturated;
  return static_cast<std::uint64_t>(std::ceil(v));
}

}  // namespace

std::uint64_t faraway_bound(const StreamConfig& config) {
  const double k = static_cast<double>(config.k);
  const double n = static_cast<double>(config.n_bound);
  const double v = k * k / (config.rho * config.kappa) * std::max(1.0, std::log2(k)) *
                   std::log2(1.0 + k * config.kappa * n);
  return std::max<std::uint64_t>(1, saturating_ceil(v));
}

std::size_t coreset_block(const StreamConfig& config) {
  if (config.coreset_block > 0) return config.coreset_block;
  const double k = static_cast<double>(config.k);
  const double v = k * k * 5.0 * static_cast<double>(ceil_log2(config.n_bound)) /
                   (config.lambda * config.lambda);
  const std::uint64_t block = saturating_ceil(v);
  return static_cast<std::size_t>(std::min<std::uint64_t>(block, config.n_bound));
}

std::uint64_t coreset_capacity(std::size_t n_bound, std::size_t block) {
  const std::uint64_t blocks = (n_bound + block - 1) / block;
  std::uint64_t levels = 0;
  while ((std::uint64_t{1} << levels) < blocks) ++levels;
  return static_cast<std::uint64_t>(block) * (levels + 2);
}

}  // namespace ulam
