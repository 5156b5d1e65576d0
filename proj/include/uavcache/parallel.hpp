#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace uavcache {

/// Index-addressed parallel map: body(i) runs once for every i in
/// [0, count) on up to max_workers threads (0 means one per hardware
/// thread). Callers write results into slots addressed by i, so the outcome
/// cannot depend on scheduling or worker count. The first exception thrown
/// by any body is rethrown on the calling thread after the pool drains.
inline void parallel_for(int count, const std::function<void(int)>& body,
                         int max_workers = 0) {
    if (count <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (max_workers > 0 && static_cast<unsigned>(max_workers) < hw)
        hw = static_cast<unsigned>(max_workers);
    const int workers = std::min(count, static_cast<int>(hw));
    if (workers < 2) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < count;) {
                if (failed.load(std::memory_order_relaxed)) return;
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace uavcache
