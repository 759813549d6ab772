/**
 * @file herz.h
 * @brief Weighted-annulus (Herz) norms and the smoothness-resolved
 *        Triebel–Lizorkin-type quasi-norms built on them.
 *
 * The Herz norm aggregates dyadic annuli R_k = {2^{k-1} < |x| <= 2^k}:
 *
 *   ||f||_{p,q,alpha} = ( sum_k ( 2^{k*alpha} ||f * chi_{R_k}||_p )^q )^{1/q}
 *
 * with the sup over k when q = inf.  Quadrature is midpoint: a grid cell
 * belongs to the annulus containing its center.  Annuli are truncated to
 * k in [k_min, k_max]; with the defaults the inner ball of radius
 * 2^{k_min-1} (~ one spacing; in particular the cell at the origin) and,
 * for dim = 2, the corner cells beyond radius 2^{k_max} carry no weight.
 *
 * The smoothness-resolved norm applies the Herz norm to the pointwise
 * aggregate ( sum_j ( 2^{j*s} |phi_j * f(x)| )^beta )^{1/beta} over the
 * dyadic levels (sup over j when beta = inf).
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "herzlab/lpdecomp.h"

namespace herzlab {

struct HerzParams {
    double p = 2.0;      ///< in (0, inf)
    double q = 2.0;      ///< in (0, inf]; kInf = sup over annuli
    double alpha = 0.0;  ///< weight exponent, must satisfy alpha > -dim/p
    int k_min = 0;       ///< innermost annulus index
    int k_max = 0;       ///< outermost annulus index

    /// Defaults k_min = ceil(log2 h) + 1 and k_max = floor(log2(X*sqrt(n)))
    /// so every annulus is grid-resolvable and inside the domain.
    static HerzParams for_grid(const GridSpec& g, double p, double q, double alpha);

    /// Throws ParamError for exponents out of range or k_min > k_max.
    void validate(int dim) const;
};

struct TLParams {
    HerzParams herz;
    double s = 0.0;     ///< smoothness
    double beta = 2.0;  ///< level aggregation exponent, in (0, inf]

    /// n * max(1/p - 1, 0).
    double sigma_p(int dim) const;
    /// n * max(1/p - 1, 1/beta - 1, 0).
    double sigma_p_beta(int dim) const;

    void validate(int dim) const;
};

/// Quasi-triangle constant 2^{max(1/min(p,q,1) - 1, 0) + 1} for which
/// ||f+g|| <= C (||f|| + ||g||) is asserted by the property tests.
double quasi_triangle_constant(double p, double q);

/// Herz norm of a complex field (uses |f|) or of a non-negative scalar
/// sample table on the same grid.
double herz_norm(const SampledField& f, const HerzParams& hp);
double herz_norm(const GridSpec& g, const std::vector<double>& abs_samples,
                 const HerzParams& hp);

/// Smoothness-resolved quasi-norm on the dyadic system (levels 0..j_max).
double ktl_norm(const SampledField& f, const TLParams& tp, const DyadicSystem& sys);

/// Same norm with each block replaced by its Peetre maximal function.
/// The equivalence with ktl_norm is only guaranteed for a > dim/min(p,beta);
/// peetre_equivalence_ok reports that condition, the norm is computed either
/// way.
double ktl_norm_peetre(const SampledField& f, const TLParams& tp,
                       const DyadicSystem& sys, const PeetreParams& pp);
bool peetre_equivalence_ok(const PeetreParams& pp, const TLParams& tp, int dim);

/// Interpolated parameter tuple:  1/p = (1-t)/p0 + t/p1 (same for q, beta),
/// alpha and s affine.  Requires matching annulus ranges.
TLParams interpolate_params(const TLParams& a, const TLParams& b, double t);

/// Per-(level, annulus) contribution table for diagnostics:
/// entry(j,k) = 2^{k*alpha} || 2^{j*s} |phi_j*f| * chi_{R_k} ||_p.
struct KtlBreakdown {
    std::vector<int> levels;
    std::vector<int> annuli;
    std::vector<std::vector<double>> entry;  ///< [level][annulus]
};
KtlBreakdown ktl_breakdown(const SampledField& f, const TLParams& tp,
                           const DyadicSystem& sys);

}  // namespace herzlab
