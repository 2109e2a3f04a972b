#pragma once

#include <cstddef>
#include <functional>

namespace syzlab {

/// Worker cap from SYZLAB_THREADS (default: hardware concurrency, at least 1).
unsigned default_thread_count();

/// Runs body(i) for i in [begin, end) on up to `threads` workers, in
/// contiguous chunks. Bodies must write disjoint data; the result is then
/// independent of the worker count.
void parallel_for(std::size_t begin, std::size_t end, unsigned threads,
                  const std::function<void(std::size_t)>& body,
                  std::size_t min_chunk = 64);

}  // namespace syzlab
