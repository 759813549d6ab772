/**
 * @file util.cpp
 */
#include "herzlab/util.h"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "herzlab/errors.h"

namespace herzlab {

int worker_threads() {
    static const int cached = [] {
        int n = static_cast<int>(std::thread::hardware_concurrency());
        if (n < 1) n = 1;
        if (const char* env = std::getenv("HERZLAB_THREADS")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v >= 1) n = std::min<long>(v, 256);
        }
        return n;
    }();
    return cached;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int workers = std::min<std::size_t>(worker_threads(), count);
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

double lq_aggregate(const std::vector<double>& terms, double q) {
    if (terms.empty()) return 0.0;
    if (is_inf(q)) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    if (!(q > 0)) throw ParamError("lq_aggregate: q must be positive or infinity");
    // Scale by the max to avoid overflow for small q.
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    if (m == 0.0) return 0.0;
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t / m, q);
    return m * std::pow(acc, 1.0 / q);
}

}  // namespace herzlab
