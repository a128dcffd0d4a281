#pragma once

#include <cstddef>
#include <functional>

namespace wpg {

// Worker count: hardware concurrency, capped by the WPG_THREADS environment variable.
int worker_count();

// Runs body(i) for i in [0, n). Work is split into fixed chunks whose boundaries do not
// depend on the worker count, so callers that write per-index results stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wpg
