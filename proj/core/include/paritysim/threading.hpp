#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace paritysim {

// Worker count for sweep fills: PARITYSIM_WORKERS when set, otherwise the
// hardware concurrency. Results never depend on it; cells are pure and
// gathered by index.
inline int worker_count_from_env() {
    if (const char* env = std::getenv("PARITYSIM_WORKERS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

// Runs fn(0..n-1) on a worker pool. The first exception wins, stops further
// dispatch and is rethrown on the calling thread.
template <class Fn>
void parallel_for_index(std::size_t n, int workers, Fn&& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < n && !failed.load();
             i = next.fetch_add(1)) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    const int spawn = std::min<int>(workers, int(n));
    pool.reserve(spawn);
    for (int w = 0; w < spawn; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace paritysim
