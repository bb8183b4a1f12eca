#pragma once

#include <cstddef>
#include <functional>

namespace ppmsync {

/// Worker count: PPMSYNC_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(begin, end, chunk) over [0, n) split into contiguous chunks, one
/// per worker. Chunk boundaries depend only on n and the chunk count, so
/// callers that reduce per chunk in chunk order get schedule-free results.
/// An exception thrown by a chunk is rethrown after all chunks finish.
void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

} // namespace ppmsync
