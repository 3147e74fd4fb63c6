#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace rtlens {

/// Runs fn(begin, end) over a partition of [0, n) into contiguous blocks,
/// one block per worker.  Each index is owned by exactly one worker and
/// workers share no mutable state, so results are identical for any thread
/// count.  threads <= 1 runs inline.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        fn(std::size_t{0}, n);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = n / threads, extra = n % threads, begin = 0;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t len = chunk + (t < extra ? 1 : 0);
        std::size_t end = begin + len;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
    for (auto& th : pool) th.join();
}

} // namespace rtlens
