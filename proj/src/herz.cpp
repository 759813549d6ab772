/**
 * @file herz.cpp
 */
#include "herzlab/herz.h"

#include <algorithm>
#include <climits>
#include <cmath>

#include "herzlab/util.h"

namespace herzlab {

// --- parameters -----------------------------------------------------------

HerzParams HerzParams::for_grid(const GridSpec& g, double p, double q, double alpha) {
    g.validate();
    HerzParams hp;
    hp.p = p;
    hp.q = q;
    hp.alpha = alpha;
    hp.k_min = static_cast<int>(std::ceil(std::log2(g.spacing()))) + 1;
    hp.k_max = static_cast<int>(
        std::floor(std::log2(g.halfwidth * std::sqrt(static_cast<double>(g.dim)))));
    hp.validate(g.dim);
    return hp;
}

void HerzParams::validate(int dim) const {
    if (!(p > 0) || is_inf(p) || !std::isfinite(p))
        throw ParamError("herz: p must be finite and positive");
    if (!(q > 0))
        throw ParamError("herz: q must be positive (kInf allowed)");
    if (!std::isfinite(alpha))
        throw ParamError("herz: alpha must be finite");
    if (!(alpha > -static_cast<double>(dim) / p))
        throw ParamError("herz: alpha must exceed -n/p");
    if (k_min > k_max)
        throw ParamError("herz: k_min must not exceed k_max");
}

double TLParams::sigma_p(int dim) const {
    return dim * std::max(1.0 / herz.p - 1.0, 0.0);
}

double TLParams::sigma_p_beta(int dim) const {
    const double inv_beta = is_inf(beta) ? 0.0 : 1.0 / beta;
    return dim * std::max({1.0 / herz.p - 1.0, inv_beta - 1.0, 0.0});
}

void TLParams::validate(int dim) const {
    herz.validate(dim);
    if (!(beta > 0))
        throw ParamError("herz: beta must be positive (kInf allowed)");
    if (!std::isfinite(s))
        throw ParamError("herz: smoothness s must be finite");
}

double quasi_triangle_constant(double p, double q) {
    const double m = std::min({p, q, 1.0});
    return std::exp2(std::max(1.0 / m - 1.0, 0.0) + 1.0);
}

// --- Herz norm ------------------------------------------------------------

namespace {

/// Annulus index of radius r: the k with 2^{k-1} < r <= 2^k; INT_MIN for r = 0.
inline int annulus_index(double r) {
    if (!(r > 0)) return INT_MIN;
    const double l = std::log2(r);
    return static_cast<int>(std::ceil(l));
}

}  // namespace

double herz_norm(const GridSpec& g, const std::vector<double>& abs_samples,
                 const HerzParams& hp) {
    g.validate();
    hp.validate(g.dim);
    if (abs_samples.size() != g.size())
        throw InputError("herz: sample table size does not match grid");

    const int n_ann = hp.k_max - hp.k_min + 1;
    std::vector<double> mass(n_ann, 0.0);  // sum of |f|^p over annulus cells
    for (std::size_t i = 0; i < abs_samples.size(); ++i) {
        const int k = annulus_index(g.radius(i));
        if (k < hp.k_min || k > hp.k_max) continue;
        const double a = abs_samples[i];
        if (a == 0.0) continue;
        mass[k - hp.k_min] += std::pow(a, hp.p);
    }
    const double cell = g.cell_measure();
    std::vector<double> contrib(n_ann);
    for (int j = 0; j < n_ann; ++j) {
        const int k = hp.k_min + j;
        contrib[j] = std::exp2(k * hp.alpha) * std::pow(mass[j] * cell, 1.0 / hp.p);
    }
    return lq_aggregate(contrib, hp.q);
}

double herz_norm(const SampledField& f, const HerzParams& hp) {
    const auto& v = f.values();
    std::vector<double> mag(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) mag[i] = std::abs(v[i]);
    return herz_norm(f.grid(), mag, hp);
}

// --- smoothness-resolved norms -------------------------------------------

namespace {

/// Pointwise ell_beta aggregation over levels of weighted block magnitudes
/// [level][point] -> one non-negative sample per point.  Max-scaled so that
/// very large beta (e.g. 2^10) neither overflows nor underflows.
std::vector<double> aggregate_levels(const std::vector<std::vector<double>>& wblocks,
                                     double beta) {
    const std::size_t n = wblocks.empty() ? 0 : wblocks[0].size();
    std::vector<double> out(n, 0.0);
    if (is_inf(beta)) {
        for (const auto& b : wblocks)
            for (std::size_t i = 0; i < n; ++i) out[i] = std::max(out[i], b[i]);
        return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
        double m = 0.0;
        for (const auto& b : wblocks) m = std::max(m, b[i]);
        if (m == 0.0) continue;
        double acc = 0.0;
        for (const auto& b : wblocks) acc += std::pow(b[i] / m, beta);
        out[i] = m * std::pow(acc, 1.0 / beta);
    }
    return out;
}

std::vector<std::vector<double>> weighted_blocks(const SampledField& f,
                                                 const TLParams& tp,
                                                 const DyadicSystem& sys,
                                                 const PeetreParams* pp) {
    if (!(f.grid() == sys.grid))
        throw CompositionError("herz: field and dyadic system grids differ");
    tp.validate(sys.grid.dim);
    const SampledField fs = to_spectrum(f);
    std::vector<std::vector<double>> wblocks(sys.levels());
    for (int j = 0; j <= sys.j_max; ++j) {
        const double w = std::exp2(j * tp.s);
        std::vector<double> mag;
        if (pp) {
            mag = peetre_maximal(fs, sys, j, *pp);
        } else {
            const SampledField block = lp_block(fs, sys, j);
            const std::vector<cplx>& bv = block.values();
            mag.resize(bv.size());
            for (std::size_t i = 0; i < bv.size(); ++i) mag[i] = std::abs(bv[i]);
        }
        for (double& m : mag) m *= w;
        wblocks[j] = std::move(mag);
    }
    return wblocks;
}

}  // namespace

double ktl_norm(const SampledField& f, const TLParams& tp, const DyadicSystem& sys) {
    const auto wblocks = weighted_blocks(f, tp, sys, nullptr);
    return herz_norm(sys.grid, aggregate_levels(wblocks, tp.beta), tp.herz);
}

double ktl_norm_peetre(const SampledField& f, const TLParams& tp,
                       const DyadicSystem& sys, const PeetreParams& pp) {
    const auto wblocks = weighted_blocks(f, tp, sys, &pp);
    return herz_norm(sys.grid, aggregate_levels(wblocks, tp.beta), tp.herz);
}

bool peetre_equivalence_ok(const PeetreParams& pp, const TLParams& tp, int dim) {
    const double floor_exp =
        static_cast<double>(dim) / std::min(tp.herz.p, is_inf(tp.beta) ? tp.herz.p : tp.beta);
    return pp.a > floor_exp;
}

TLParams interpolate_params(const TLParams& a, const TLParams& b, double t) {
    if (!(t >= 0.0 && t <= 1.0))
        throw InputError("herz: interpolation weight must lie in [0, 1]");
    if (a.herz.k_min != b.herz.k_min || a.herz.k_max != b.herz.k_max)
        throw CompositionError("herz: interpolation endpoints use different annulus ranges");
    auto harmonic = [t](double x0, double x1) {
        const double i0 = is_inf(x0) ? 0.0 : 1.0 / x0;
        const double i1 = is_inf(x1) ? 0.0 : 1.0 / x1;
        const double inv = (1.0 - t) * i0 + t * i1;
        return inv == 0.0 ? kInf : 1.0 / inv;
    };
    TLParams out = a;
    out.herz.p = harmonic(a.herz.p, b.herz.p);
    out.herz.q = harmonic(a.herz.q, b.herz.q);
    out.beta = harmonic(a.beta, b.beta);
    out.herz.alpha = (1.0 - t) * a.herz.alpha + t * b.herz.alpha;
    out.s = (1.0 - t) * a.s + t * b.s;
    return out;
}

KtlBreakdown ktl_breakdown(const SampledField& f, const TLParams& tp,
                           const DyadicSystem& sys) {
    const auto wblocks = weighted_blocks(f, tp, sys, nullptr);
    const GridSpec& g = sys.grid;
    KtlBreakdown out;
    for (int j = 0; j <= sys.j_max; ++j) out.levels.push_back(j);
    for (int k = tp.herz.k_min; k <= tp.herz.k_max; ++k) out.annuli.push_back(k);
    out.entry.assign(out.levels.size(),
                     std::vector<double>(out.annuli.size(), 0.0));
    const int n_ann = static_cast<int>(out.annuli.size());
    for (int j = 0; j <= sys.j_max; ++j) {
        std::vector<double> mass(n_ann, 0.0);
        const auto& wb = wblocks[j];
        for (std::size_t i = 0; i < wb.size(); ++i) {
            const int k = annulus_index(g.radius(i));
            if (k < tp.herz.k_min || k > tp.herz.k_max || wb[i] == 0.0) continue;
            mass[k - tp.herz.k_min] += std::pow(wb[i], tp.herz.p);
        }
        for (int a = 0; a < n_ann; ++a) {
            out.entry[j][a] = std::exp2(out.annuli[a] * tp.herz.alpha) *
                              std::pow(mass[a] * g.cell_measure(), 1.0 / tp.herz.p);
        }
    }
    return out;
}

}  // namespace herzlab
