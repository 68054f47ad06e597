#pragma once

#include <cstddef>
#include <functional>

namespace qclab {

/// Worker count used by parallel loops. Taken from QCLAB_THREADS when set,
/// otherwise the hardware concurrency. `set_thread_count` overrides both
/// (0 restores the default).
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Calls body(begin, end) on contiguous chunks covering [0, n). Chunk
/// boundaries depend only on n and the worker count, and bodies must write
/// only to their own indices, so results do not depend on scheduling.
/// If chunks throw, the exception from the lowest chunk is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace qclab
