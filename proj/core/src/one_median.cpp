#include <algorithm>
#include <limits>

#include "ulam/clustering.hpp"
#include "ulam/error.hpp"
#include "ulam/streaming.hpp"

namespace ulam {

namespace {

constexpr std::uint64_t kReservoirSalt = 3;
constexpr std::uint64_t kCoresetSalt = 4;

std::size_t one_median_block(const OneMedianConfig& c) {
  StreamConfig sc;
  sc.n_bound = c.n_bound;
  sc.dimension = c.dimension;
  sc.k = 1;
  sc.lambda = c.lambda;
  sc.coreset_block = c.coreset_block;
  sc.check();
  return coreset_block(sc);
}

}  // namespace

StreamingOneMedian::StreamingOneMedian(const OneMedianConfig& config)
    : config_(config),
      reservoir_cap_(ceil_log2(config.n_bound)),
      coreset_(1, one_median_block(config), derive_seed(config.seed, kCoresetSalt)),
      rng_(derive_seed(config.seed, kReservoirSalt)) {
  reservoir_.reserve(reservoir_cap_);
}

void StreamingOneMedian::update(Permutation x) {
  if (x.dimension() != config_.dimension) {
    raise(ErrorKind::DimensionMismatch, "stream item has dimension " + std::to_string(x.dimension()) +
                                            ", expected " + std::to_string(config_.dimension));
  }
  if (items_seen_ >= config_.n_bound) {
    raise(ErrorKind::StreamOverflow, "stream exceeds n_bound = " + std::to_string(config_.n_bound));
  }
  auto item = std::make_shared<const StreamItem>(StreamItem{items_seen_, std::move(x)});
  // Algorithm R.
  if (reservoir_.size() < reservoir_cap_) {
    reservoir_.push_back(item);
  } else {
    const auto slot = rng_.uniform_index(items_seen_ + 1);
    if (slot < reservoir_cap_) reservoir_[slot] = item;
  }
  coreset_.add(item);
  ++items_seen_;
  peak_stored_ = std::max(peak_stored_, stored());
}

OneMedianResult StreamingOneMedian::query() const {
  if (reservoir_.empty()) raise(ErrorKind::EmptySketch, "no permutations seen");
  std::vector<ItemRef> sample = reservoir_;
  std::sort(sample.begin(), sample.end(), [](const ItemRef& a, const ItemRef& b) { return a->index < b->index; });

  std::vector<Permutation> candidates;
  for (const auto& s : sample) candidates.push_back(s->perm);
  std::vector<const Permutation*> pool;
  for (const auto& s : sample) pool.push_back(&s->perm);
  for (auto& r : reconstruct_all_5_subsets(pool, std::numeric_limits<std::uint64_t>::max())) {
    candidates.push_back(std::move(r));
  }

  const auto points = coreset_.points();
  OneMedianResult best{candidates.front(), std::numeric_limits<double>::infinity(), candidates.size()};
  for (const auto& c : candidates) {
    const double v = weighted_objective(points, std::span<const Permutation>(&c, 1));
    if (v < best.weighted_objective) {
      best.median = c;
      best.weighted_objective = v;
    }
  }
  return best;
}

std::uint64_t StreamingOneMedian::space_bound() const noexcept {
  return reservoir_cap_ + coreset_capacity(config_.n_bound, coreset_.block());
}

}  // namespace ulam
