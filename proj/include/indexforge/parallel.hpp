#ifndef INDEXFORGE_PARALLEL_HPP_INCLUDED
#define INDEXFORGE_PARALLEL_HPP_INCLUDED

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace indexforge {

/// Runs fn(i) for i in [0, n) on `jobs` threads (0 = hardware concurrency).
/// Each index is processed exactly once; callers write results into
/// per-index slots, keeping output independent of scheduling.
template <typename Fn>
void parallel_for(size_t n, uint32_t jobs, Fn&& fn) {
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    if (jobs == 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    uint32_t count = static_cast<uint32_t>(std::min<size_t>(jobs, n));
    pool.reserve(count);
    for (uint32_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

} // namespace indexforge

#endif
