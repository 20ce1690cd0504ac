#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bkr {

inline int default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run fn(begin, end) over contiguous chunks of [0, count) on `threads`
/// workers. Work is assigned by index, so results written per index are
/// independent of scheduling. The first exception is rethrown after join.
template <typename Fn>
void parallel_chunks(std::int64_t count, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    if (count <= 0) return;
    const auto nthreads = static_cast<std::int64_t>(threads) < count
                              ? static_cast<std::int64_t>(threads)
                              : count;
    if (nthreads == 1) {
        fn(std::int64_t{0}, count);
        return;
    }

    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (std::int64_t t = 0; t < nthreads; ++t) {
        const std::int64_t begin = count * t / nthreads;
        const std::int64_t end = count * (t + 1) / nthreads;
        pool.emplace_back([&, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace bkr
