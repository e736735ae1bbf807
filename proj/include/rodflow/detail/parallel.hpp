#ifndef RODFLOW_DETAIL_PARALLEL_HPP
#define RODFLOW_DETAIL_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace rodflow::detail {

// Runs fn(i) for i = 0..count-1 on up to `threads` workers. Tasks must be
// independent and write only to their own slots; fn must not throw (handle
// per-task errors inside). With threads <= 1 this is a plain loop.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace rodflow::detail

#endif
