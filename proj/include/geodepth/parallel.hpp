#pragma once

#include <cstddef>
#include <functional>

namespace geodepth {

/// Worker cap: GEODEPTH_THREADS when set and positive, otherwise the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Runs body(begin, end) over [0, count) split into contiguous chunks, one per
/// worker. Chunk boundaries depend only on `count` and `threads`; callers write
/// disjoint outputs, so results do not depend on scheduling. threads == 0 means
/// default_thread_count(). Exceptions from workers are rethrown (first chunk
/// wins).
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace geodepth
