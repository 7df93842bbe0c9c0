#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace netdef {

inline unsigned resolve_workers(unsigned requested) {
    return requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
}

/// Runs fn(i) for i in [0, count) on up to `workers` threads. Callers write results into
/// per-index slots, so output never depends on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    workers = static_cast<unsigned>(std::min<std::size_t>(resolve_workers(workers), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                        next = count;
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace netdef
