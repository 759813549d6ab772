/**
 * @file util.h
 * @brief Small shared utilities: deterministic RNG, parallel_for, exponent
 *        helpers with the q = infinity convention.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

namespace herzlab {

/// Positive infinity, used to encode q = infinity / beta = infinity.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_inf(double x) { return std::isinf(x) && x > 0; }

/**
 * Deterministic uniform generator.  std::mt19937_64 has a portable bit
 * stream; the bits->double mapping is done by hand so results do not depend
 * on the standard library's distribution implementation.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Uniform angle in [0, 2*pi).
    double angle() { return uniform() * 2.0 * M_PI; }

    std::uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

/**
 * Runs fn(i) for i in [0, count).  Uses up to HERZLAB_THREADS workers
 * (default: hardware concurrency); each index is processed exactly once and
 * results written by the callee into pre-allocated slots stay deterministic
 * regardless of the thread count.
 */
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Number of worker threads parallel_for will use (>= 1).
int worker_threads();

/// ell_q aggregation of a non-negative sequence; q = kInf means sup.
/// Returns 0 for an empty sequence.
double lq_aggregate(const std::vector<double>& terms, double q);

}  // namespace herzlab
