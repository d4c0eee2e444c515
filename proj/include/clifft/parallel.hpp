#pragma once

#include <cstddef>
#include <functional>

namespace clifft::detail {

/// Worker cap from the CLIFFT_THREADS environment variable; defaults to 1.
int thread_cap();

/// Runs fn(0..count-1), on up to thread_cap() workers when that is > 1.
/// Callers must make writes for distinct indices disjoint; result assembly
/// stays with the caller so output ordering is deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace clifft::detail
