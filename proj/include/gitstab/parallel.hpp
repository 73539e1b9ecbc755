#pragma once

#include <cstddef>
#include <functional>

namespace gitstab {

/// Worker count: GITSTAB_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
std::size_t thread_budget();

/// Calls body(i) for i in [0, count) on up to thread_budget() threads. The
/// first exception thrown by any call is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gitstab
