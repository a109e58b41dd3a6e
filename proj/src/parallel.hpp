#ifndef CORRBERN_PARALLEL_HPP
#define CORRBERN_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace corrbern::detail {

// Honours CORRBERN_THREADS; defaults to the number of logical cores.
inline std::size_t worker_count() {
    if (const char* env = std::getenv("CORRBERN_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v >= 1) return static_cast<std::size_t>(v);
        } catch (...) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Runs fn(i) for i in [0, count). Each index is processed exactly once; callers
// write into per-index slots so the result never depends on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t max_workers = worker_count()) {
    const std::size_t workers = std::min(max_workers, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace corrbern::detail

#endif
