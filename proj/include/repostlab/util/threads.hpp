#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace repostlab {

// Runs fn(i) for i in [0, n). Results must go into per-index slots the caller
// owns so the outcome is identical for any jobs value. jobs <= 1 runs inline.
template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const auto workers = static_cast<std::size_t>(jobs) < n
                             ? static_cast<std::size_t>(jobs)
                             : n;
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace repostlab
