#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netbatch {

// 0 means "all hardware threads".
unsigned resolve_workers(unsigned requested);

// Runs fn(i) for i in [0, count) on up to `workers` threads. Work items are
// handed out one at a time from a shared counter so uneven items balance
// out. The first exception thrown by any item is rethrown on the caller.
template <typename Fn>
void parallel_for_dynamic(std::size_t count, unsigned workers, Fn&& fn) {
    workers = resolve_workers(workers);
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(count, std::memory_order_relaxed);
                return;
            }
        }
    };
    const std::size_t n_threads = std::min<std::size_t>(workers, count);
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads - 1);
        for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(body);
        body();
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace netbatch
