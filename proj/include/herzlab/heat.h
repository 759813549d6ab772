/**
 * @file heat.h
 * @brief Heat semigroup, Duhamel integral, Picard solver for the semilinear
 *        heat equation u_t = Laplace(u) + G(u), and the local-existence
 *        time bound.
 *
 * The semigroup acts in frequency space as multiplication by
 * exp(-t |xi|^2).  The mild formulation
 *
 *   u(t) = e^{tL} u0 + int_0^t e^{(t-tau)L} G(u)(tau) dtau
 *
 * is solved by whole-interval Picard iteration on a uniform time grid with
 * composite-trapezoid quadrature in tau (evaluated by an exact exponential
 * recurrence, O(steps) per sweep).
 */
#pragma once

#include <optional>
#include <vector>

#include "herzlab/herz.h"
#include "herzlab/nonlinear.h"

namespace herzlab {

/// e^{t*Laplace} f; InputError for t < 0.
SampledField heat_propagate(const SampledField& f, double t);

/**
 * Composite-trapezoid Duhamel integral over a uniform grid covering [0, t]:
 * history[i] = G(u)(t_i) with t_i = i * t / (len-1).  Returns the integral
 * value at time t.  InputError for t <= 0 or fewer than 2 entries,
 * CompositionError for mismatched grids.
 */
SampledField duhamel_term(const std::vector<SampledField>& history, double t);

enum class SolveStatus { completed, blown_up, picard_diverged };

struct MildSolverConfig {
    double T = 0.1;                  ///< time horizon, > 0
    int steps = 64;                  ///< >= 2 time steps (grid has steps+1 nodes)
    double picard_tol = 1e-8;        ///< relative-change stopping tolerance, in (0,1)
    int picard_max = 200;            ///< iteration cap
    double blowup_threshold = 1e6;   ///< sup-value / norm ceiling
    TLParams norm_params;            ///< monitoring norm parameters
    int snapshot_stride = 1;         ///< keep full fields every this many steps
    bool record_norm_trace = true;   ///< monitoring norm along the trajectory

    void validate() const;  ///< ParamError on violations
};

struct Trajectory {
    std::vector<double> times;           ///< all grid times 0..T
    std::vector<double> snapshot_times;  ///< subset with stored fields
    std::vector<SampledField> states;    ///< fields at snapshot_times
    std::vector<double> norm_trace;      ///< monitoring norm at all grid times
    std::vector<double> contraction_ratios;  ///< successive-difference ratios
    SolveStatus status = SolveStatus::completed;
    double failure_time = 0.0;  ///< earliest bad grid time when not completed
    int iterations = 0;
};

/**
 * Whole-interval Picard iteration.  Stops when the max-over-time relative
 * change drops below picard_tol; reports blown_up when an iterate exceeds
 * blowup_threshold in sup norm (earliest such grid time recorded) and
 * picard_diverged when iterates produce non-finite values or exhaust
 * picard_max while still moving.
 */
Trajectory solve_mild(const SampledField& u0, const LipFunction& G,
                      const MildSolverConfig& cfg, const DyadicSystem& sys);

/// Independent cross-check integrator (exponential Heun time-marching on the
/// same grid); same Trajectory conventions, no contraction ratios.
Trajectory solve_marching(const SampledField& u0, const LipFunction& G,
                          const MildSolverConfig& cfg, const DyadicSystem& sys);

struct ExistenceBoundInput {
    double mu = 2.0;    ///< nonlinearity growth order, > 1
    double s = 0.0;     ///< working smoothness
    double p = 2.0;
    double q = 2.0;
    double alpha = 0.0;
    int dim = 1;
    double C = 1.0;        ///< contraction constant (user-supplied or empirical)
    double u0_norm = 1.0;  ///< norm of the initial data, > 0
};

struct ExistenceBound {
    double s_critical = 0.0;  ///< s_bar = n/p + alpha - 2/(mu-1)
    double theta = 0.0;       ///< (s - s_bar)/2
    double prefactor = 0.0;   ///< (1/C)^{2/((mu-1)(s-s_bar))} *
                              ///  (mu^{-1/(mu-1)} - mu^{-mu/(mu-1)})^{2/(s-s_bar)}
    /// Guaranteed horizon: prefactor * 2^{-2/((mu-1)(s-s_bar))} *
    /// (1 - 1/mu)^{mu-1} * u0_norm^{-2/(s-s_bar)}; empty when s <= s_bar.
    std::optional<double> T_bound;
};

ExistenceBound existence_bound(const ExistenceBoundInput& in);

/**
 * Empirical contraction constant: runs a pilot solve at cfg.T and inverts
 * ratio ~= C * T^{(mu-1)(s-s_bar)/2} * 2*||u||^{mu-1} using the measured
 * median ratio and the peak monitoring norm.  InputError when the pilot
 * yields no usable ratios.
 */
double estimate_contraction_constant(const SampledField& u0, const LipFunction& G,
                                     const MildSolverConfig& cfg,
                                     const DyadicSystem& sys, double mu,
                                     double s_minus_sbar);

struct BlowupMeasurement {
    double T0 = 0.0;        ///< bisection-refined horizon estimate
    double bracket_lo = 0;  ///< largest horizon that completed
    double bracket_hi = 0;  ///< smallest horizon that failed
    int solves = 0;
};

/**
 * Largest-survivable-horizon measurement: grows T until solve_mild stops
 * completing, then bisects the bracket to relative width rel_resolution.
 * T0 is the bracket midpoint.
 */
BlowupMeasurement measure_blowup_time(const SampledField& u0, const LipFunction& G,
                                      const MildSolverConfig& base,
                                      const DyadicSystem& sys, double T_guess,
                                      double rel_resolution = 5e-3);

}  // namespace herzlab
