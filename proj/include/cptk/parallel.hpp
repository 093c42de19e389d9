#pragma once

#include <cstddef>
#include <functional>

namespace cptk {

/// Worker count: CPTK_THREADS if set and positive, else the hardware concurrency.
std::size_t thread_count();

/// Calls fn(k) for k in [0, n) across thread_count() workers. Callers write
/// results into slot k, so the outcome does not depend on scheduling. If calls
/// throw, the exception of the lowest failing k seen is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace cptk
