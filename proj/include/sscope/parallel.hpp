#ifndef SSCOPE_PARALLEL_HPP
#define SSCOPE_PARALLEL_HPP

#include <algorithm>
#include <thread>
#include <vector>

namespace sscope {

/// Runs fn(i) for i in [begin, end) across hardware threads with a static
/// block partition. Tasks must write to disjoint locations; the partition is
/// deterministic so results do not depend on scheduling.
template <typename Fn>
void parallel_for(int begin, int end, Fn&& fn) {
    const int n = end - begin;
    if (n <= 0) return;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, n);
    if (workers == 1) {
        for (int i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = begin + w * chunk;
        const int hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (int i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace sscope

#endif
