#include <algorithm>
#include <limits>

#include "ulam/error.hpp"
#include "ulam/streaming.hpp"

namespace ulam {

StreamingCoreset::StreamingCoreset(std::size_t k, std::size_t block, std::uint64_t seed)
    : k_(k), block_(block), rng_(seed) {
  if (k_ == 0 || block_ == 0) raise(ErrorKind::InvalidConfig, "coreset needs k >= 1 and block >= 1");
}

void StreamingCoreset::add(const ItemRef& item) {
  buffer_.push_back({item, 1.0});
  if (buffer_.size() < block_) return;
  std::vector<WeightedItem> carry = std::move(buffer_);
  buffer_.clear();
  std::size_t level = 0;
  while (level < levels_.size() && !levels_[level].empty()) {
    std::vector<WeightedItem> merged = std::move(levels_[level]);
    levels_[level].clear();
    merged.insert(merged.end(), carry.begin(), carry.end());
    carry = reduce(std::move(merged));
    ++level;
  }
  if (level == levels_.size()) levels_.emplace_back();
  levels_[level] = std::move(carry);
}

std::vector<WeightedItem> StreamingCoreset::reduce(std::vector<WeightedItem> merged) {
  const std::size_t n = merged.size();
  const std::size_t centers_wanted = std::min(n, 2 * k_);
  if (n <= block_) return merged;

  // D-sampling of bicriteria centers (k-median++ seeding).
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> owner(n, 0);
  std::vector<std::size_t> centers;
  auto add_center = [&](std::size_t c) {
    const std::size_t ci = centers.size();
    centers.push_back(c);
    for (std::size_t i = 0; i < n; ++i) {
      const double dist = static_cast<double>(ulam_distance(merged[i].item->perm, merged[c].item->perm));
      if (dist < nearest[i]) {
        nearest[i] = dist;
        owner[i] = ci;
      }
    }
  };
  auto draw = [&](auto mass) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += mass(i);
    if (!(total > 0.0)) return n;
    double target = rng_.uniform01() * total;
    for (std::size_t i = 0; i < n; ++i) {
      target -= mass(i);
      if (target < 0.0) return i;
    }
    for (std::size_t i = n; i-- > 0;) {
      if (mass(i) > 0.0) return i;
    }
    return n;
  };
  add_center(draw([&](std::size_t i) { return merged[i].weight; }));
  while (centers.size() < centers_wanted) {
    const std::size_t c = draw([&](std::size_t i) { return merged[i].weight * nearest[i]; });
    if (c == n) break;  // every point already sits on a center
    add_center(c);
  }

  const std::size_t m = centers.size();
  std::vector<double> cluster_weight(m, 0.0);
  double total_cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cluster_weight[owner[i]] += merged[i].weight;
    total_cost += merged[i].weight * nearest[i];
  }
  std::vector<double> mass(n);
  double mass_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 1.0 / cluster_weight[owner[i]];
    if (total_cost > 0.0) s += nearest[i] / total_cost;
    mass[i] = merged[i].weight * s;
    mass_total += mass[i];
  }

  const std::size_t draws = block_ > m ? block_ - m : 1;
  std::vector<double> new_weight(n, 0.0);
  for (std::size_t t = 0; t < draws; ++t) {
    double target = rng_.uniform01() * mass_total;
    std::size_t pick = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      target -= mass[i];
      if (target < 0.0) {
        pick = i;
        break;
      }
    }
    new_weight[pick] += merged[pick].weight * mass_total / (static_cast<double>(draws) * mass[pick]);
  }

  // Renormalize per center so each cluster keeps its original weight; a
  // cluster that drew nothing is represented by its center.
  std::vector<double> sampled(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) sampled[owner[i]] += new_weight[i];
  for (std::size_t c = 0; c < m; ++c) {
    if (sampled[c] == 0.0) new_weight[centers[c]] = cluster_weight[c];
  }
  std::vector<WeightedItem> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (new_weight[i] <= 0.0) continue;
    const std::size_t c = owner[i];
    const double w = sampled[c] == 0.0 ? new_weight[i] : new_weight[i] * cluster_weight[c] / sampled[c];
    out.push_back({merged[i].item, w});
  }
  // Identical stream items may appear twice after a merge; fold them.
  std::sort(out.begin(), out.end(),
            [](const WeightedItem& a, const WeightedItem& b) { return a.item->index < b.item->index; });
  std::vector<WeightedItem> folded;
  for (auto& w : out) {
    if (!folded.empty() && folded.back().item->index == w.item->index) {
      folded.back().weight += w.weight;
    } else {
      folded.push_back(std::move(w));
    }
  }
  return folded;
}

std::vector<WeightedItem> StreamingCoreset::points() const {
  std::vector<WeightedItem> out;
  for (const auto& level : levels_) out.insert(out.end(), level.begin(), level.end());
  out.insert(out.end(), buffer_.begin(), buffer_.end());
  return out;
}

std::size_t StreamingCoreset::stored() const noexcept {
  std::size_t n = buffer_.size();
  for (const auto& level : levels_) n += level.size();
  return n;
}

double StreamingCoreset::total_weight() const noexcept {
  double w = 0.0;
  for (const auto& level : levels_) {
    for (const auto& p : level) w += p.weight;
  }
  for (const auto& p : buffer_) w += p.weight;
  return w;
}

}  // namespace ulam
