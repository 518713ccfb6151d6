#ifndef ZENERWAVE_PARALLEL_HPP
#define ZENERWAVE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace zenerwave {

/// Thread count resolved from ZENERWAVE_THREADS (0 or unset = hardware).
unsigned thread_count();

/// Static block partition of [0, n) over thread_count() threads. Each index
/// is visited exactly once; fn must only write to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace zenerwave

#endif
