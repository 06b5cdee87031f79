#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace heatrk {

// Strided static partition of [0, n) across workers. Each index is visited
// exactly once; the first exception raised by any worker is rethrown on the
// caller after all workers join. body(i) must only touch state owned by
// index i for this to stay race-free.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& body) {
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const auto workers = static_cast<std::size_t>(threads) < n
                             ? static_cast<std::size_t>(threads)
                             : n;
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace heatrk
