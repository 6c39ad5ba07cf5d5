#pragma once

#include <cstddef>
#include <functional>

namespace ulam {

/// Worker cap: ULAM_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(begin, end) over contiguous chunks of [0, count). Chunks are
/// disjoint, so writes to per-index slots need no synchronization; callers
/// reduce results in index order afterwards.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ulam
