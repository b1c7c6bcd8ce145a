#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace grfcli {

struct ItemError {
    size_t index = 0;
    std::exception_ptr error;
};

// Run fn(0..count-1) on up to `jobs` threads (0 = hardware concurrency).
// Items must write only their own outputs so scheduling cannot affect
// results. Failed items are collected, sorted by index, and returned.
inline std::vector<ItemError> run_parallel(size_t count, int jobs,
                                           const std::function<void(size_t)>& fn) {
    if (jobs <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        jobs = hw > 0 ? static_cast<int>(hw) : 1;
    }
    jobs = static_cast<int>(std::min<size_t>(static_cast<size_t>(jobs), std::max<size_t>(count, 1)));

    std::vector<ItemError> errors;
    if (jobs == 1) {
        for (size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors.push_back({i, std::current_exception()});
            }
        }
        return errors;
    }

    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                errors.push_back({i, std::current_exception()});
            }
        }
    };
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(jobs));
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
    std::sort(errors.begin(), errors.end(),
              [](const ItemError& a, const ItemError& b) { return a.index < b.index; });
    return errors;
}

} // namespace grfcli
