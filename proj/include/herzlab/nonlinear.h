/**
 * @file nonlinear.h
 * @brief Scalar composition nonlinearities of smoothness class mu, their
 *        norm, pointwise composition with fields, the local modulus
 *        integral, and the multi-factor high-low paraproduct split.
 *
 * A nonlinearity G of class mu = L + nu (L = ceil(mu) - 1, nu in (0, 1])
 * must vanish together with its first L derivatives at 0.  Its norm is
 *
 *   ||G|| = sum_{j=0}^{L-1} sup_t |G^{(j)}(t)| / |t|^{mu-j}
 *         + sup_{t0 != t1} |G^{(L)}(t0) - G^{(L)}(t1)| / |t0 - t1|^nu ,
 *
 * the first sum being empty when L = 0.
 */
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "herzlab/lpdecomp.h"

namespace herzlab {

struct LipFunction {
    std::function<double(double)> value;
    /// derivs[l-1] evaluates G^{(l)}, l = 1..L (may be empty).
    std::vector<std::function<double(double)>> derivs;
    double mu = 1.0;
    bool allow_fd = true;    ///< finite-difference fallback for missing derivatives
    double fd_step = 1e-5;   ///< central-difference step of the fallback
    std::string name = "custom";

    int order_L() const;    ///< L = ceil(mu) - 1
    double holder_nu() const;  ///< nu = mu - L

    double eval(double t) const;
    /// G^{(l)}(t), l = 0..L.  Uses the closed-form derivative when supplied,
    /// otherwise iterated central differences; CapabilityError when the
    /// derivative is missing and allow_fd is false.
    double derivative(int l, double t) const;

    /// Checks mu > 0 and G^{(l)}(0) = 0 for l = 0..L within 1e-8
    /// (ParamError / InputError).
    void validate() const;

    /// Built-in family G(t) = scale * t|t|^{mu-1} with closed-form
    /// derivatives; the norm of the scale=1 member is finite for this class.
    static LipFunction power(double mu, double scale = 1.0);
    static LipFunction zero(double mu);
    static LipFunction linear();  ///< G(t) = t, mu = 1
    /// Lookup by name ("power" | "zero" | "linear"); ParamError otherwise.
    static LipFunction by_name(const std::string& name, double mu, double scale = 1.0);
};

/**
 * Norm of G over the window [-B, B]: the weighted-sup terms are evaluated on
 * a dense grid of `samples` points, the Hoelder seminorm pairwise over an
 * even subsample of `pair_samples` points.
 */
double lip_norm(const LipFunction& G, double B, int samples = 4001,
                int pair_samples = 600);

/// Pointwise composition G(f).  f is expected to be (numerically) real; the
/// real part is used.  max_imag, if given, receives the largest |Im f|
/// encountered so callers can warn.
SampledField compose(const LipFunction& G, const SampledField& f,
                     double* max_imag = nullptr);

/**
 * Local modulus integral at scale 2^{-k}:
 *   I(x) = sum_{|z| <= 2^{-k}} |f(x+z) - f(x)|^{mu_exp} * h^n
 * over grid displacements z (cell-center membership, periodic shifts).
 * ResolutionError when 2^{-k} < spacing, InputError when 2^{-k} > halfwidth.
 */
std::vector<double> modulus_integral(const SampledField& f, int k, double mu_exp);

/**
 * High-low paraproduct split of a pointwise product of m >= 2 factors.
 * With Delta_j the level projections and Q_j = sum_{l<=j} Delta_l:
 *
 *   highlow[k] = sum_{j>=N} ( prod_{i != k} Q_{j-N} f_i ) * Delta_j f_k
 *   diagonal   = sum over the remaining level tuples (any two indices within
 *                N of the maximum, or maximum < N)
 *
 * so that sum_k highlow[k] + diagonal equals the product of the band-limited
 * factors.  The separation N = ceil(1 + log2(3(m-1))) + 1 keeps each
 * high-low term at level j spectrally inside {2^{j-1} <= |xi| <= 2^{j+1}}.
 */
struct Paraproduct {
    int separation = 0;                 ///< N
    std::vector<SampledField> highlow;  ///< one term per factor
    SampledField diagonal;
};

int paraproduct_separation(int m);
Paraproduct paraproduct_split(const std::vector<SampledField>& factors,
                              const DyadicSystem& sys);

}  // namespace herzlab
