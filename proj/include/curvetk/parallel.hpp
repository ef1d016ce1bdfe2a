#pragma once

#include <cstdint>
#include <functional>

namespace curvetk {

// Worker count resolution: explicit argument > CURVETK_WORKERS env > hardware.
unsigned default_worker_count();

// Runs body(chunk) for chunk = 0..nchunks-1 on `workers` threads. Chunks are
// fixed units of work keyed by index, so results written to per-chunk slots
// are identical for every worker count.
void parallel_chunks(uint64_t nchunks, unsigned workers, const std::function<void(uint64_t)>& body);

// Same, but body returns true to signal a hit. Chunks are dispatched in
// waves of `workers` in index order; once a wave containing a hit completes,
// no later chunk is started. Returns the smallest chunk index that reported a
// hit, or nchunks if none did. Chunks before the returned one all ran.
uint64_t parallel_chunks_until(uint64_t nchunks, unsigned workers,
                               const std::function<bool(uint64_t)>& body);

}  // namespace curvetk
