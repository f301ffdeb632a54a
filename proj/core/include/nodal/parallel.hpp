#pragma once

#include <cstddef>
#include <functional>

namespace nodal {

/// Process-wide default worker count used when a caller passes threads == 0.
/// Results of every parallel routine in this library are independent of it.
unsigned default_threads();
void set_default_threads(unsigned threads);

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default_threads()).
/// Indices are handed out dynamically; body must only write to slot i of its outputs.
/// The first exception thrown by any body is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = 0);

}  // namespace nodal
