#ifndef KESTEN_PARALLEL_HPP
#define KESTEN_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace kesten {

// 0 -> hardware concurrency; otherwise the request, clamped to [1, 256].
int resolve_threads(int requested);

// Runs fn(i) for i in [0, n) across `threads` workers in fixed contiguous
// blocks. fn must write only to index-addressed storage; reductions happen
// afterwards in index order, so results never depend on the schedule.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace kesten

#endif  // KESTEN_PARALLEL_HPP
