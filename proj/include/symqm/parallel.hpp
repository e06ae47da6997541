#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace symqm {

inline std::size_t shard_count(std::size_t n, int threads) {
    if (threads < 1) throw std::invalid_argument("parallel_chunks: threads must be >= 1");
    return std::min<std::size_t>(static_cast<std::size_t>(threads), n);
}

/// Run fn(shard, begin, end) over contiguous shards of [0, n). Shards are
/// fixed by (n, threads) alone and concatenate to [0, n) in shard order, so a
/// shard-ordered merge of per-shard results is independent of scheduling.
inline void parallel_chunks_indexed(
    std::size_t n, int threads,
    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    std::size_t shards = shard_count(n, threads);
    if (n == 0) return;
    if (shards == 1) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(shards);
    std::size_t base = n / shards, extra = n % shards, begin = 0;
    for (std::size_t s = 0; s < shards; ++s) {
        std::size_t len = base + (s < extra ? 1 : 0);
        pool.emplace_back(fn, s, begin, begin + len);
        begin += len;
    }
    for (auto& t : pool) t.join();
}

/// Run fn(begin, end) over contiguous shards of [0, n); reductions must be
/// done by the caller in shard order or be order-independent.
inline void parallel_chunks(std::size_t n, int threads,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    parallel_chunks_indexed(n, threads,
                            [&fn](std::size_t, std::size_t b, std::size_t e) { fn(b, e); });
}

} // namespace symqm
