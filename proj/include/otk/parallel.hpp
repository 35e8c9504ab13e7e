#pragma once

#include <cstddef>
#include <functional>

namespace otk {

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// handled exactly once; the first exception thrown is rethrown after all
/// workers have stopped.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace otk
