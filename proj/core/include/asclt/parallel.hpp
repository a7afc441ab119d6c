#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace asclt {

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
///
/// Work items are claimed dynamically, so callers must write results into
/// slots indexed by i and reduce them afterwards in index order. That is what
/// keeps every result independent of the worker count.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(count);
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Replica blocks used by streaming reductions. The block layout depends only
/// on the replica count, never on the thread count.
struct BlockRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

inline std::vector<BlockRange> split_blocks(std::size_t count, std::size_t max_blocks = 64) {
    std::vector<BlockRange> blocks;
    if (count == 0) return blocks;
    const std::size_t n = std::min(count, max_blocks);
    blocks.reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
        blocks.push_back({count * b / n, count * (b + 1) / n});
    }
    return blocks;
}

}  // namespace asclt
