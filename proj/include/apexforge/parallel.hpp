#pragma once

#include <cstddef>
#include <functional>

namespace apexforge {

/// Worker count used by enumeration loops: the value set by
/// set_thread_count, else APEXFORGE_THREADS, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Number of chunks parallel_chunks will use for a range of n items.
std::size_t chunk_count(std::size_t n);

/// Splits [0, n) into chunk_count(n) contiguous chunks and runs
/// fn(chunk_index, begin, end) on each, concurrently. Callers merge per-chunk
/// results in chunk order, so output never depends on the worker count.
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

/// Runs fn(i) for every i in [0, n), one task per index, across the worker
/// pool. For coarse, uneven work items such as search subtrees.
void parallel_tasks(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace apexforge
