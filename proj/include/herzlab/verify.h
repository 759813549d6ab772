/**
 * @file verify.h
 * @brief Empirical verification harness: reference function families,
 *        log-log slope fitting, and one check routine per quantitative
 *        inequality exercised by the toolkit.
 *
 * Every check validates its hypotheses before measuring, recomputes expected
 * exponents/targets from its inputs (never hard-coded), and returns a
 * CheckReport with measured values, expectations with tolerances, raw
 * points, and a pass / fail / inconclusive verdict.  All randomness flows
 * through explicit seeds; a repeated run reproduces results bit-for-bit.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "herzlab/heat.h"

namespace herzlab {

struct ExpectedValue {
    double value = 0.0;
    double tol = 0.0;
    /// "abs"  : |measured - value| <= tol
    /// "rel"  : |measured - value| <= tol * |value|
    /// "bound": measured <= value * tol
    /// "floor": measured >= value
    std::string kind = "abs";
};

struct CheckReport {
    std::string check_name;
    std::map<std::string, double> measured;
    std::map<std::string, ExpectedValue> expected;
    std::string verdict = "inconclusive";  ///< "pass" | "fail" | "inconclusive"
    long samples = 0;
    double runtime_sec = 0.0;
    std::vector<std::array<double, 2>> points;  ///< raw (x, y) pairs
    std::map<std::string, std::string> notes;

    bool passed() const { return verdict == "pass"; }
};

// --- reference families ---------------------------------------------------

/// Smooth radial bump exp(-r^2/(1-r^2)) profile, = 0 outside r >= 1.
double bump_profile(double r);

/// count bumps centered at `center`, widths width0 * ratio^m.
std::vector<SampledField> dilated_bump_family(const GridSpec& g, int count,
                                              double center, double width0,
                                              double ratio);

/// Bumps of fixed width modulated by cos(omega_m x), omega log-spaced.
std::vector<SampledField> modulated_bump_family(const GridSpec& g, int count,
                                                double center, double width,
                                                double omega0, double omega_ratio);

/**
 * Random field sitting exactly at smoothness s: level j of the dyadic system
 * gets unit-modulus seeded phases on its annulus modes, scaled so the L^2
 * block norm equals 2^{-j*s}; Hermitian symmetry makes the samples real.
 */
SampledField random_band_field(const DyadicSystem& sys, double s, std::uint64_t seed);

/// Power cusp theta(x)|x|^kappa with a smooth cutoff of radius rho.
SampledField power_cusp(const GridSpec& g, double kappa, double rho);

/// Negative power theta(x) (|x|^2 + (h/2)^2)^{-gamma/2}: a cusp on the edge
/// of the annulus-weighted space with exponent gamma, regularized at cell
/// scale.
SampledField negative_power_cusp(const GridSpec& g, double gamma, double rho);

// --- slope fitting --------------------------------------------------------

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;      ///< in log-log coordinates
    double residual_rms = 0.0;
};

/// Least-squares line through (log x, log y).  InputError for fewer than 3
/// points or nonpositive coordinates.
SlopeFit slope_fit(const std::vector<std::array<double, 2>>& pts);

// --- checks ---------------------------------------------------------------

/// Semigroup smoothing t^{-theta/2}: fits the norm of e^{tL}f at smoothness
/// s+theta over t_grid for each theta.  Tolerance: 15% of |theta/2|, floor
/// 0.05.  Flat data with theta > 0 yields "inconclusive".
CheckReport check_heat_smoothing(const SampledField& f, const TLParams& base,
                                 const DyadicSystem& sys,
                                 const std::vector<double>& thetas,
                                 const std::vector<double>& t_grid);

struct HerzSmoothingSpec {
    double p = 4.0, r = 2.0;      ///< target integrability / aggregation
    double q = 2.0, delta = 2.0;  ///< source integrability / aggregation
    double alpha1 = 0.0;          ///< target weight
    double alpha2 = 0.0;          ///< source weight
};

/// Annulus-weighted smoothing exponent -(n/q - n/p + alpha2 - alpha1)/2,
/// measured on a borderline cusp; hypotheses 1 < q <= p < inf and
/// -n/p < alpha1 <= alpha2 < n - n/q raise ParamError.  Tolerance 20%,
/// floor 0.05.
CheckReport check_herz_smoothing(const GridSpec& g, const HerzSmoothingSpec& spec,
                                 const std::vector<double>& t_grid);

/**
 * Composition bound ||G(f)|| at smoothness s_mu = s - (mu-1)(n/p+alpha-s)
 * against ||G|| * ||f||^mu (level aggregation inf on the right): ratios over
 * a family, pass when max/median <= 50.  Also measures invariance of the
 * ratio under G -> lambda G, f -> lambda f for the homogeneous power family.
 */
CheckReport check_composition(const LipFunction& G, const std::vector<SampledField>& family,
                              const TLParams& tp, const DyadicSystem& sys);

/// Power analog for f^m at smoothness s_m = s - (m-1)(n/p+alpha-s), same
/// aggregation beta on both sides.
CheckReport check_product(const std::vector<SampledField>& family, int m,
                          const TLParams& tp, const DyadicSystem& sys);

struct EmbeddingSpec {
    TLParams source;  ///< must have beta = inf
    TLParams target;
    /// Checks the exponent balance s2 - n/q - alpha2 = s1 - n/s - alpha1,
    /// q <= s, alpha2 >= alpha1, r <= p; ParamError otherwise.
    void validate(int dim) const;
};

struct InterpolationSpec {
    TLParams end0, end1;
    std::vector<double> thetas;  ///< interior interpolation weights
};

/**
 * (a) Endpoint identity: interpolated params at theta = 0 / 1 reproduce the
 *     endpoint norms to 1e-12 (relative).
 * (b) Interpolation inequality ||f|| <= ||f||_0^{1-theta} ||f||_1^theta with
 *     slack 1.01.
 * (c) Embedding: target norm <= ratio_bound * source norm with the measured
 *     ratio_bound reported and its spread (max/median <= 50) asserted.
 */
CheckReport check_embedding_interpolation(const std::vector<SampledField>& family,
                                          const EmbeddingSpec& emb,
                                          const InterpolationSpec& interp,
                                          const DyadicSystem& sys);

/// One-sequence Hardy quotient (||delta||_q + ||eta||_q) / ||eps||_q with
/// delta_k = sum_{j<=k} a^{k-j} eps_j, eta_k = sum_{j>=k} a^{j-k} eps_j.
/// ParamError unless 0 < a < 1; InputError for empty or negative sequences.
double hardy_constant(const std::vector<double>& eps, double a, double q);

/**
 * Discrete Hardy-type sequence inequality: for random positive sequences,
 * c_emp = (||delta||_q + ||eta||_q) / ||eps||_q with
 * delta_k = sum_{j<=k} a^{k-j} eps_j and eta_k = sum_{j>=k} a^{j-k} eps_j
 * stays bounded across lengths: the slope of mean c_emp vs length must be
 * within 0.05 of 0 for every (a, q) combination.
 */
CheckReport check_hardy_sequences(const std::vector<int>& lengths,
                                  const std::vector<double>& a_values,
                                  const std::vector<double>& q_values,
                                  int trials, std::uint64_t seed);

/**
 * Blow-up scaling under u0 -> lambda u0: measures T0(lambda) via
 * measure_blowup_time.  For constant data the fitted exponent must be
 * -(mu-1) within 5%; generally T0(lambda) >= C_fit * lambda^{-1/theta} with
 * C_fit calibrated at the smallest lambda (the binding point, since
 * 1/theta > mu-1 whenever s < n/p + alpha).
 */
CheckReport check_blowup_scaling(const SampledField& u0,
                                 const std::vector<double>& lambdas,
                                 const LipFunction& G, const MildSolverConfig& cfg,
                                 const DyadicSystem& sys,
                                 const ExistenceBoundInput& eb, bool constant_data);

/**
 * Regularity gain of the Duhamel part w = u - e^{tL}u0: its norm at
 * smoothness s + theta (theta < (s - s_bar)(mu - 1)) stays stable under one
 * grid refinement: refined/coarse norm ratio <= 1.25 at all recorded times.
 */
CheckReport check_regularity_gain(const SampledField& u0, const LipFunction& G,
                                  const MildSolverConfig& cfg, const DyadicSystem& sys,
                                  double theta_gain, double mu);

/**
 * Membership threshold probe for the cusp theta(x)|x|^kappa: the norm at
 * smoothness d is refinement-stable (change <= 10%) for
 * d < n/p + alpha + kappa - 0.1 and grows (>= 1.5x from N to 4N) for
 * d > n/p + alpha + kappa.  In the inconclusive band no verdict is taken.
 */
CheckReport check_optimality_probe(double kappa, const std::vector<double>& d_values,
                                   const TLParams& tp, const DyadicSystem& sys);

}  // namespace herzlab
