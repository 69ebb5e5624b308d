#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace covertime::detail {

/// Runs job(i) for i in [0, count) on up to `threads` workers.
template <class Job>
void parallel_for(std::size_t count, std::size_t threads, Job&& job) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i; (i = cursor.fetch_add(1)) < count;)
                    job(i);
            } catch (...) {
                errors[t] = std::current_exception();
                cursor.store(count);
            }
        });
    }
    for (auto& th : pool)
        th.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace covertime::detail
