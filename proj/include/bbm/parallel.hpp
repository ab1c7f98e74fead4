#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace bbm {

/// Static block split of [0, n) across worker threads. Each index is computed
/// independently and written to a distinct slot, so results are bit-identical
/// regardless of thread count.
inline void parallel_for(long n, const std::function<void(long)>& body, int threads = 0) {
    if (threads <= 0) threads = (int)std::thread::hardware_concurrency();
    if (threads <= 1 || n < 4) {
        for (long i = 0; i < n; ++i) body(i);
        return;
    }
    threads = std::min<long>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        const long lo = n * w / threads, hi = n * (w + 1) / threads;
        pool.emplace_back([&, lo, hi]() {
            for (long i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace bbm
