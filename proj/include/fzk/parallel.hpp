// Minimal data-parallel loop. Work items write into preallocated per-index slots and
// callers reduce sequentially afterwards, so results are identical for any thread
// count (including 1, the default). No work queue: [0, count) is split into one
// contiguous block per thread.
#ifndef FZK_PARALLEL_HPP
#define FZK_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace fzk {

inline int& thread_count() {
    static int n = 1;
    return n;
}

inline void set_thread_count(int n) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    thread_count() = std::clamp(n, 1, hw);
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    int nt = std::min<std::size_t>(thread_count(), count ? count : 1);
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    std::size_t chunk = (count + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace fzk

#endif
