#pragma once

#include <cstddef>
#include <functional>

namespace dirlap {

// Worker count from DIRLAP_THREADS, else hardware concurrency; at least 1.
std::size_t worker_count();

// Runs body(begin, end) over contiguous static chunks of [0, n). Chunk
// boundaries depend only on n and the worker count, never on timing.
void parallel_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace dirlap
