/**
 * @file lpdecomp.cpp
 */
#include "herzlab/lpdecomp.h"

#include <cmath>

#include "herzlab/util.h"

namespace herzlab {

namespace {
// g(t) = exp(-1/t) for t > 0, else 0: the classic smooth ramp ingredient.
inline double ramp(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
}  // namespace

double cutoff_profile(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 1.5) return 0.0;
    const double up = ramp(1.5 - r);
    const double down = ramp(r - 1.0);
    return up / (up + down);
}

int default_j_max(const GridSpec& g) {
    g.validate();
    return static_cast<int>(std::floor(std::log2(g.nyquist()))) - 1;
}

DyadicSystem build_dyadic_system(const GridSpec& g, int j_max) {
    g.validate();
    if (j_max < 0) j_max = default_j_max(g);
    if (j_max < 1)
        throw ResolutionError("lpdecomp: grid too coarse for a dyadic system");
    if (std::exp2(j_max) > g.nyquist())
        throw ResolutionError("lpdecomp: 2^j_max exceeds the Nyquist frequency");

    DyadicSystem sys;
    sys.grid = g;
    sys.j_max = j_max;
    sys.multipliers.resize(j_max + 1);
    const std::size_t n = g.size();
    // Cache psi(2^{-j}|xi|) per level; level j >= 1 is the telescoped
    // difference, which keeps the partition of unity exact by construction.
    std::vector<double> prev(n), cur(n);
    for (std::size_t k = 0; k < n; ++k) prev[k] = cutoff_profile(g.freq_radius(k));
    sys.multipliers[0] = prev;
    for (int j = 1; j <= j_max; ++j) {
        const double scale = std::exp2(-j);
        auto& level = sys.multipliers[j];
        level.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            cur[k] = cutoff_profile(scale * g.freq_radius(k));
            level[k] = cur[k] - prev[k];
        }
        prev.swap(cur);
    }
    return sys;
}

SampledField lp_block(const SampledField& f, const DyadicSystem& sys, int j) {
    if (!(f.grid() == sys.grid))
        throw CompositionError("lpdecomp: field and system grids differ");
    if (j < 0 || j > sys.j_max)
        throw InputError("lpdecomp: level outside [0, j_max]");
    return apply_multiplier(f, sys.multipliers[j]);
}

std::vector<double> peetre_maximal(const SampledField& f, const DyadicSystem& sys,
                                   int j, const PeetreParams& pp) {
    if (!(pp.a > 0)) throw ParamError("lpdecomp: Peetre exponent a must be > 0");
    const SampledField block = lp_block(f, sys, j);
    const GridSpec& g = sys.grid;
    const int N = g.points_per_axis;
    const double h = g.spacing();
    const double two_j = std::exp2(j);

    std::vector<double> mag(g.size());
    {
        const auto& v = block.values();
        for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::abs(v[i]);
    }

    std::vector<double> out(g.size());
    if (g.dim == 1) {
        // Weight depends only on the periodic index distance; precompute.
        std::vector<double> w(N / 2 + 1);
        for (int d = 0; d <= N / 2; ++d)
            w[d] = std::pow(1.0 + two_j * (d * h), -pp.a);
        parallel_for(g.size(), [&](std::size_t i) {
            double best = 0.0;
            const int ii = static_cast<int>(i);
            for (int y = 0; y < N; ++y) {
                int d = std::abs(ii - y);
                d = std::min(d, N - d);
                best = std::max(best, mag[y] * w[d]);
            }
            out[i] = best;
        });
    } else {
        parallel_for(g.size(), [&](std::size_t i) {
            const int ix = static_cast<int>(i % static_cast<std::size_t>(N));
            const int iy = static_cast<int>(i / static_cast<std::size_t>(N));
            double best = 0.0;
            for (int yy = 0; yy < N; ++yy) {
                int dy = std::abs(iy - yy);
                dy = std::min(dy, N - dy);
                const double dy2 = static_cast<double>(dy) * dy;
                const std::size_t row = static_cast<std::size_t>(yy) * N;
                for (int yx = 0; yx < N; ++yx) {
                    int dx = std::abs(ix - yx);
                    dx = std::min(dx, N - dx);
                    const double dist = h * std::sqrt(dx * dx + dy2);
                    best = std::max(best,
                                    mag[row + yx] * std::pow(1.0 + two_j * dist, -pp.a));
                }
            }
            out[i] = best;
        });
    }
    return out;
}

}  // namespace herzlab
