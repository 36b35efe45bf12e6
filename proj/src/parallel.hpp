#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace asrr::detail {

inline constexpr std::size_t kParallelThreshold = 1000;

/// Calls body(i) for i in [0, n). Above kParallelThreshold the range is split
/// into contiguous chunks, one per hardware thread. body must only write to
/// its own index.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(std::thread::hardware_concurrency(), 16));
    if (n <= kParallelThreshold || workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t begin = 0; begin < n; begin += chunk) {
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&body, begin, end] {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
}

}  // namespace asrr::detail
