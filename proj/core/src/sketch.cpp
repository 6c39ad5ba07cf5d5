#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "ulam/error.hpp"
#include "ulam/streaming.hpp"

namespace ulam {

namespace {

constexpr std::uint64_t kBucketSalt = 1;
constexpr std::uint64_t kCoresetSalt = 2;

}  // namespace

std::uint32_t DistanceCache::operator()(const StreamItem& other) {
  auto [it, inserted] = cache_.try_emplace(other.index, 0);
  if (inserted) {
    it->second = static_cast<std::uint32_t>(ulam_distance(*incoming_, other.perm));
    ++computed_;
  }
  return it->second;
}

FarawaySampler::FarawaySampler(const StreamConfig& config) {
  const std::uint64_t bound = faraway_bound(config);
  const double k = static_cast<double>(config.k);
  const auto ring_target = static_cast<std::uint64_t>(
      config.k * static_cast<std::size_t>(std::ceil(std::log2(1.0 + k * config.kappa *
                                                                      static_cast<double>(config.n_bound)))));
  const std::size_t ring_count =
      static_cast<std::size_t>(std::max<std::uint64_t>(1, std::min(ring_target, bound)));
  ring_cap_ = static_cast<std::size_t>(std::min<std::uint64_t>(bound / ring_count, config.n_bound));
  const double d = static_cast<double>(config.dimension);
  rings_.reserve(ring_count);
  for (std::size_t r = 0; r < ring_count; ++r) {
    const double t = ring_count == 1 ? 0.0 : static_cast<double>(r) / static_cast<double>(ring_count - 1);
    rings_.push_back({std::pow(d, t), {}});
  }
}

void FarawaySampler::offer(const ItemRef& item, DistanceCache& dist) {
  for (auto& ring : rings_) {
    if (ring.members.size() >= ring_cap_) continue;
    const bool far = std::all_of(ring.members.begin(), ring.members.end(), [&](const ItemRef& m) {
      return static_cast<double>(dist(*m)) > ring.threshold;
    });
    if (far) ring.members.push_back(item);
  }
}

std::vector<ItemRef> FarawaySampler::members() const {
  std::vector<ItemRef> out;
  for (const auto& ring : rings_) out.insert(out.end(), ring.members.begin(), ring.members.end());
  std::sort(out.begin(), out.end(), [](const ItemRef& a, const ItemRef& b) { return a->index < b->index; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const ItemRef& a, const ItemRef& b) { return a->index == b->index; }),
            out.end());
  return out;
}

std::size_t FarawaySampler::slot_count() const noexcept {
  std::size_t n = 0;
  for (const auto& ring : rings_) n += ring.members.size();
  return n;
}

std::uint64_t StreamSketch::stored_slots() const noexcept {
  std::uint64_t n = faraway.slot_count() + coreset.stored();
  for (const auto& b : buckets) n += b.members.size();
  return n;
}

std::uint64_t StreamSketch::stored_distinct() const {
  std::unordered_set<std::uint64_t> ids;
  for (const auto& b : buckets) {
    for (const auto& m : b.members) ids.insert(m->index);
  }
  for (const auto& ring : faraway.rings()) {
    for (const auto& m : ring.members) ids.insert(m->index);
  }
  for (const auto& w : coreset.points()) ids.insert(w.item->index);
  return ids.size();
}

std::uint64_t StreamSketch::space_bound() const noexcept {
  return static_cast<std::uint64_t>(buckets.size()) * cap + faraway_bound(config) +
         coreset_capacity(config.n_bound, coreset.block());
}

StreamSketch sketch_init(const StreamConfig& config) {
  config.check();
  StreamSketch s;
  s.config = config;
  s.cap = bucket_cap(config);
  s.ell_grid = distance_grid(config.dimension, config.gamma);
  s.p_grid = probability_grid(config.n_bound, config.gamma);
  s.buckets.reserve(s.ell_grid.size() * s.p_grid.size());
  for (double ell : s.ell_grid) {
    for (double p : s.p_grid) s.buckets.push_back(SampleBucket{ell, p, {}, 0});
  }
  s.faraway = FarawaySampler(config);
  s.coreset = StreamingCoreset(config.k, coreset_block(config), derive_seed(config.seed, kCoresetSalt));
  s.rng = Rng(derive_seed(config.seed, kBucketSalt));
  return s;
}

void sketch_update(StreamSketch& s, Permutation x) {
  if (x.dimension() != s.config.dimension) {
    raise(ErrorKind::DimensionMismatch, "stream item has dimension " + std::to_string(x.dimension()) +
                                            ", sketch expects " + std::to_string(s.config.dimension));
  }
  if (s.items_seen >= s.config.n_bound) {
    raise(ErrorKind::StreamOverflow, "stream exceeds n_bound = " + std::to_string(s.config.n_bound));
  }
  auto item = std::make_shared<const StreamItem>(StreamItem{s.items_seen, std::move(x)});
  s.cache.reset(item->perm);

  for (auto& bucket : s.buckets) {
    if (!s.rng.bernoulli(bucket.p)) continue;
    const double threshold = s.config.beta * bucket.ell;
    const bool admissible = std::all_of(bucket.members.begin(), bucket.members.end(), [&](const ItemRef& m) {
      return static_cast<double>(s.cache(*m)) >= threshold;
    });
    if (!admissible) continue;
    bucket.members.push_back(item);
    if (bucket.members.size() >= s.cap) {
      bucket.members.clear();
      ++bucket.resets;
    }
  }
  s.faraway.offer(item, s.cache);
  s.coreset.add(item);
  ++s.items_seen;
  s.peak_stored = std::max(s.peak_stored, s.stored_slots());
}

}  // namespace ulam
