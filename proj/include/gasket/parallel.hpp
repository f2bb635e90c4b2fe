#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gasket {

/// GASKET_STATS_THREADS if set and positive, else the number of logical cores.
unsigned default_thread_count();

/// 0 means "use the default".
inline unsigned resolve_threads(unsigned requested) { return requested == 0 ? default_thread_count() : requested; }

/// Run f(chunk, begin, end) over [0, n) split into fixed-size chunks.
/// The chunking does not depend on the thread count, so callers that reduce
/// per-chunk results in chunk order get bit-identical answers for any number
/// of workers.
template <class F>
void parallel_chunks(std::size_t n, std::size_t chunk_size, unsigned threads, F&& f) {
    if (n == 0) return;
    const std::size_t chunks = (n + chunk_size - 1) / chunk_size;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), chunks));
    auto run = [&](std::size_t c) { f(c, c * chunk_size, std::min(n, (c + 1) * chunk_size)); };
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run(c);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t c = next++; c < chunks; c = next++) {
                try {
                    run(c);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = chunks;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size) { return (n + chunk_size - 1) / chunk_size; }

} // namespace gasket
