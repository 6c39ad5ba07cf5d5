#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ulam/permutation.hpp"
#include "ulam/random.hpp"

namespace ulam {

// ---------------------------------------------------------------------------
// Configuration and grids

/// Default constants: beta = 1e-7, gamma = 0.1, lambda = 1e-7, rho = 1e-8,
/// kappa = 1/3. At desk-scale n these make pruning reject only exact
/// duplicates and make the coreset exact, so beta, lambda and rho may be
/// overridden. All logarithms are base 2, rounded up.
struct StreamConfig {
  std::size_t n_bound = 1;
  std::size_t dimension = 1;
  std::size_t k = 1;
  double beta = 1e-7;
  double gamma = 0.1;
  double lambda = 1e-7;
  double rho = 1e-8;
  double kappa = 1.0 / 3.0;
  std::uint64_t seed = 0;
  /// Points kept per merge-and-reduce level; 0 derives it from lambda.
  std::size_t coreset_block = 0;

  /// Throws InvalidConfig.
  void check() const;

  friend bool operator==(const StreamConfig&, const StreamConfig&) = default;
};

/// ceil(log2(max(n, 2))), so the result is at least 1.
std::size_t ceil_log2(std::uint64_t n) noexcept;

/// {1, (1+gamma), (1+gamma)^2, ...} up to the first value >= d.
std::vector<double> distance_grid(std::size_t d, double gamma);
/// {1, 1/(1+gamma), ...} down to the first value <= 1/n.
std::vector<double> probability_grid(std::size_t n, double gamma);

/// k * ceil(log2 n)^3.
std::size_t bucket_cap(const StreamConfig& config);
/// ceil(k^2 (rho kappa)^-1 max(1, log2 k) log2(1 + k kappa n)), saturating.
std::uint64_t faraway_bound(const StreamConfig& config);
/// Effective merge-and-reduce block: the override, else
/// ceil(k^2 * 5 ceil(log2 n) / lambda^2) clamped to n_bound.
std::size_t coreset_block(const StreamConfig& config);
/// Upper bound on coreset points held between updates:
/// block * (ceil(log2 ceil(n / block)) + 2).
std::uint64_t coreset_capacity(std::size_t n_bound, std::size_t block);

// ---------------------------------------------------------------------------
// Stored stream items

/// A retained stream element. Structures share these by pointer so a
/// permutation kept by several buckets is stored once.
struct StreamItem {
  std::uint64_t index;
  Permutation perm;
};
using ItemRef = std::shared_ptr<const StreamItem>;

/// Distances from the item being inserted to retained items, memoized for
/// the duration of one update.
class DistanceCache {
 public:
  void reset(const Permutation& incoming) {
    incoming_ = &incoming;
    cache_.clear();
  }
  std::uint32_t operator()(const StreamItem& other);
  std::uint64_t computed() const noexcept { return computed_; }

 private:
  const Permutation* incoming_ = nullptr;
  std::unordered_map<std::uint64_t, std::uint32_t> cache_;
  std::uint64_t computed_ = 0;
};

// ---------------------------------------------------------------------------
// Grid sampling

struct SampleBucket {
  double ell = 1.0;
  double p = 1.0;
  std::vector<ItemRef> members;
  std::uint64_t resets = 0;
};

// ---------------------------------------------------------------------------
// Faraway sampling

/// Monotone sampler: rings with thresholds geometric in [1, d]. An item joins
/// a ring when it is farther than the ring threshold from every ring member
/// and the ring is below its cap. Members are never evicted.
class FarawaySampler {
 public:
  FarawaySampler() = default;
  explicit FarawaySampler(const StreamConfig& config);

  void offer(const ItemRef& item, DistanceCache& dist);

  struct Ring {
    double threshold;
    std::vector<ItemRef> members;
  };

  const std::vector<Ring>& rings() const noexcept { return rings_; }
  std::vector<Ring>& mutable_rings() noexcept { return rings_; }
  std::size_t ring_cap() const noexcept { return ring_cap_; }
  /// Distinct members across rings, by stream index.
  std::vector<ItemRef> members() const;
  std::size_t slot_count() const noexcept;

 private:
  std::vector<Ring> rings_;
  std::size_t ring_cap_ = 0;
};

// ---------------------------------------------------------------------------
// Coreset

struct WeightedItem {
  ItemRef item;
  double weight;
};

/// Merge-and-reduce over blocks of `block` items. Full blocks are kept
/// exactly; two sets on the same level are merged and reduced back to at most
/// `block` points by sensitivity sampling against a D-sampled set of 2k
/// centers, with weights renormalized per center so every reduction
/// conserves total weight.
class StreamingCoreset {
 public:
  StreamingCoreset() : rng_(0) {}
  StreamingCoreset(std::size_t k, std::size_t block, std::uint64_t seed);

  void add(const ItemRef& item);

  /// Levels (ascending) followed by the partial buffer.
  std::vector<WeightedItem> points() const;
  std::size_t stored() const noexcept;
  double total_weight() const noexcept;
  std::size_t block() const noexcept { return block_; }

  // Snapshot access.
  std::vector<std::vector<WeightedItem>>& levels() noexcept { return levels_; }
  const std::vector<std::vector<WeightedItem>>& levels() const noexcept { return levels_; }
  std::vector<WeightedItem>& buffer() noexcept { return buffer_; }
  const std::vector<WeightedItem>& buffer() const noexcept { return buffer_; }
  Rng& rng() noexcept { return rng_; }
  const Rng& rng() const noexcept { return rng_; }

 private:
  std::vector<WeightedItem> reduce(std::vector<WeightedItem> merged);

  std::size_t k_ = 1;
  std::size_t block_ = 1;
  Rng rng_;
  std::vector<WeightedItem> buffer_;
  std::vector<std::vector<WeightedItem>> levels_;
};

// ---------------------------------------------------------------------------
// Sketch

struct StreamSketch {
  StreamConfig config;
  std::size_t cap = 0;
  std::vector<double> ell_grid;
  std::vector<double> p_grid;
  /// Row-major over (ell index, p index).
  std::vector<SampleBucket> buckets;
  FarawaySampler faraway;
  StreamingCoreset coreset;
  Rng rng{0};
  std::uint64_t items_seen = 0;
  std::uint64_t peak_stored = 0;
  DistanceCache cache;

  SampleBucket& bucket(std::size_t ell_index, std::size_t p_index) {
    return buckets[ell_index * p_grid.size() + p_index];
  }

  /// Bucket member slots + faraway slots + coreset points.
  std::uint64_t stored_slots() const noexcept;
  /// Distinct retained permutations.
  std::uint64_t stored_distinct() const;
  /// cells * cap + faraway_bound + coreset_capacity.
  std::uint64_t space_bound() const noexcept;
};

StreamSketch sketch_init(const StreamConfig& config);

/// Feeds one stream item to every bucket, the faraway sampler and the
/// coreset. Throws DimensionMismatch or StreamOverflow (more than n_bound
/// items).
void sketch_update(StreamSketch& sketch, Permutation x);

struct QueryOptions {
  std::uint64_t tuple_budget = 100'000'000;
  std::uint64_t reconstruct_budget = 1'000'000;
  /// When a budget is exceeded: reconstruct each retained item with its four
  /// nearest retained neighbours instead of all 5-subsets, and pick medians
  /// greedily instead of by exhaustive k-tuple search. Off by default.
  bool fallback = false;
};

enum class ReconstructionMode { Exhaustive, Neighbourhood };
enum class SelectionMode { Exhaustive, Greedy };

struct StreamResult {
  std::vector<Permutation> medians;
  /// Coreset estimate of the objective.
  double weighted_objective = 0.0;
  std::size_t sample_size = 0;     // |R|
  std::size_t faraway_size = 0;    // |F|
  std::size_t coreset_size = 0;    // |P|
  std::size_t candidate_count = 0; // distinct candidates scored
  std::size_t reconstructions = 0;
  ReconstructionMode reconstruction_mode = ReconstructionMode::Exhaustive;
  SelectionMode selection_mode = SelectionMode::Exhaustive;
};

/// Reconstructs over R, adds R and F as candidates and returns the k-tuple
/// minimizing the weighted coreset objective (lexicographic ties). Throws
/// EmptySketch or BudgetExceeded.
StreamResult sketch_query(const StreamSketch& sketch, const QueryOptions& options = {});

/// Items retained by the buckets (R), ascending stream index.
std::vector<ItemRef> sample_union(const StreamSketch& sketch);

/// Candidate family the query scores: R, then F \ R, then reconstructions,
/// duplicates removed.
struct CandidateFamily {
  std::vector<Permutation> candidates;
  std::size_t sample_size = 0;
  std::size_t faraway_size = 0;
  std::size_t reconstructions = 0;
  ReconstructionMode mode = ReconstructionMode::Exhaustive;
};
CandidateFamily query_candidates(const StreamSketch& sketch, const QueryOptions& options = {});

/// Scores a fixed median set against the coreset.
double weighted_objective(std::span<const WeightedItem> coreset, std::span<const Permutation> medians);

// Snapshot: versioned text dump of the full sketch state. Saving, loading and
// querying yields the same answer as querying the original.
void save_snapshot(std::ostream& out, const StreamSketch& sketch);
StreamSketch load_snapshot(std::istream& in);
void save_snapshot_file(const std::string& path, const StreamSketch& sketch);
StreamSketch load_snapshot_file(const std::string& path);

// ---------------------------------------------------------------------------
// Streaming 1-median

struct OneMedianConfig {
  std::size_t n_bound = 1;
  std::size_t dimension = 1;
  double lambda = 1e-7;
  std::uint64_t seed = 0;
  /// 0 derives it from lambda as for the k-median sketch with k = 1.
  std::size_t coreset_block = 0;
};

struct OneMedianResult {
  Permutation median;
  double weighted_objective;
  std::size_t candidate_count;
};

/// Uniform reservoir of ceil(log2 n) items plus a (1, lambda)-coreset.
class StreamingOneMedian {
 public:
  explicit StreamingOneMedian(const OneMedianConfig& config);

  void update(Permutation x);
  OneMedianResult query() const;

  std::size_t reservoir_capacity() const noexcept { return reservoir_cap_; }
  std::uint64_t stored() const noexcept { return reservoir_.size() + coreset_.stored(); }
  std::uint64_t peak_stored() const noexcept { return peak_stored_; }
  std::uint64_t items_seen() const noexcept { return items_seen_; }
  const StreamingCoreset& coreset() const noexcept { return coreset_; }
  /// reservoir + coreset capacity, the accounting behind the c * log^2 n
  /// space claim.
  std::uint64_t space_bound() const noexcept;

 private:
  OneMedianConfig config_;
  std::size_t reservoir_cap_;
  std::vector<ItemRef> reservoir_;
  StreamingCoreset coreset_;
  Rng rng_;
  std::uint64_t items_seen_ = 0;
  std::uint64_t peak_stored_ = 0;
};

}  // namespace ulam
