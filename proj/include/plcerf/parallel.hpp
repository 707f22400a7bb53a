#ifndef PLCERF_PARALLEL_HPP
#define PLCERF_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace plcerf {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Runs fn(begin, end) over disjoint chunks of [0, n). Deterministic
// partitioning: chunk i covers a contiguous range, so callers can merge
// per-chunk results in index order.
template <typename Fn>
void parallel_chunks(std::size_t n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2) {
        if (n) fn(std::size_t{0}, n, 0);
        return;
    }
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t i = 0; i < nt; ++i) {
        const std::size_t b = i * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back([&fn, b, e, i] { fn(b, e, static_cast<int>(i)); });
    }
    for (auto& th : pool) th.join();
}

// Dynamic work queue over [0, n) for unevenly sized items.
template <typename Fn>
void parallel_items(std::size_t n, int threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    pool.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

} // namespace plcerf

#endif
