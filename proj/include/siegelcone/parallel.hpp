#pragma once

// Deterministic parallel-for: indices are pre-assigned to workers, each index
// writes only its own slot, so output is independent of the thread count.

#include <algorithm>
#include <thread>
#include <vector>

namespace siegelcone {

inline int& worker_threads() {
    static int n = 1;
    return n;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const int threads = std::max(1, worker_threads());
    if (threads == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace siegelcone
