#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hdisk {

/// Apply fn(i) for i in [0, n) and gather the results by index. Work is
/// chunked across hardware threads; the result vector is identical to the
/// sequential one because each slot is written exactly once by index.
/// The lowest-index exception (if any) is rethrown after all threads join.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    if (hw == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    const std::size_t nthreads = std::min(hw, n);
    std::vector<std::exception_ptr> errs(n);
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (std::size_t t = 0; t < nthreads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < n; i += nthreads) {
                try {
                    out[i] = fn(i);
                } catch (...) {
                    errs[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < n; ++i)
        if (errs[i]) std::rethrow_exception(errs[i]);
    return out;
}

} // namespace hdisk
