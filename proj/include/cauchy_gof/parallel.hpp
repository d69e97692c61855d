#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cauchy_gof {

/// Number of workers to use for a request of `threads` (0 = all cores).
inline unsigned resolve_threads(unsigned threads) noexcept {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    return threads;
}

/// Calls fn(i) for every i in [0, count). Work is handed out by index, so
/// as long as fn(i) writes only to slot i the result does not depend on the
/// worker count. The first exception thrown by any call is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(count, std::memory_order_relaxed);
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers - 1);
        for (unsigned w = 1; w < workers; ++w) {
            pool.emplace_back(body);
        }
        body();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace cauchy_gof
