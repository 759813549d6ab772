/**
 * @file heat.cpp
 */
#include "herzlab/heat.h"

#include <algorithm>
#include <cmath>

#include "herzlab/util.h"

namespace herzlab {

SampledField heat_propagate(const SampledField& f, double t) {
    if (!(t >= 0) || !std::isfinite(t))
        throw InputError("heat: propagation time must be finite and >= 0");
    const GridSpec& g = f.grid();
    std::vector<double> m(g.size());
    for (std::size_t k = 0; k < m.size(); ++k) {
        const double r = g.freq_radius(k);
        m[k] = std::exp(-t * r * r);
    }
    return apply_multiplier(f, m);
}

SampledField duhamel_term(const std::vector<SampledField>& history, double t) {
    if (history.size() < 2)
        throw InputError("heat: Duhamel history needs at least two nodes");
    if (!(t > 0) || !std::isfinite(t))
        throw InputError("heat: Duhamel horizon must be positive and finite");
    const GridSpec& g = history.front().grid();
    for (const auto& f : history)
        if (!(f.grid() == g))
            throw CompositionError("heat: Duhamel history grids differ");

    const std::size_t len = history.size();
    const double dt = t / static_cast<double>(len - 1);
    std::vector<cplx> acc(g.size(), cplx(0.0));
    for (std::size_t j = 0; j < len; ++j) {
        const double w = (j == 0 || j == len - 1) ? 0.5 * dt : dt;
        const double lag = t - dt * static_cast<double>(j);
        const SampledField hj = to_spectrum(history[j]);
        const std::vector<cplx>& spec = hj.spectrum();
        for (std::size_t k = 0; k < acc.size(); ++k) {
            const double r = g.freq_radius(k);
            acc[k] += w * std::exp(-lag * r * r) * spec[k];
        }
    }
    return to_physical(SampledField::from_spectrum(g, std::move(acc)));
}

void MildSolverConfig::validate() const {
    if (!(T > 0) || !std::isfinite(T))
        throw ParamError("heat: horizon T must be positive and finite");
    if (steps < 2) throw ParamError("heat: need at least 2 time steps");
    if (!(picard_tol > 0 && picard_tol < 1))
        throw ParamError("heat: picard_tol must lie in (0, 1)");
    if (picard_max < 1) throw ParamError("heat: picard_max must be >= 1");
    if (!(blowup_threshold > 0))
        throw ParamError("heat: blowup_threshold must be positive");
    if (snapshot_stride < 1)
        throw ParamError("heat: snapshot_stride must be >= 1");
}

namespace {

using Spectra = std::vector<std::vector<cplx>>;  // [time node][bin]

struct SweepOutcome {
    bool finite = true;
    bool over_threshold = false;
    std::size_t first_bad_node = 0;
    double max_sup = 0.0;
};

/// Physical values of every node plus sup tracking against the threshold.
SweepOutcome to_values_checked(const GridSpec& g, const Spectra& u,
                               double threshold, std::vector<std::vector<cplx>>& vals) {
    SweepOutcome res;
    vals.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        vals[i].resize(g.size());
        detail::dft_backward(g, u[i].data(), vals[i].data());
        double sup = 0.0;
        bool finite = true;
        for (const cplx& z : vals[i]) {
            const double a = std::abs(z);
            if (!std::isfinite(a)) {
                finite = false;
                break;
            }
            sup = std::max(sup, a);
        }
        res.max_sup = std::max(res.max_sup, sup);
        if (!finite) {
            res.finite = false;
            res.first_bad_node = i;
            return res;
        }
        if (sup > threshold && !res.over_threshold) {
            res.over_threshold = true;
            res.first_bad_node = i;
            return res;
        }
    }
    return res;
}

void finalize_trajectory(Trajectory& tr, const GridSpec& g, const Spectra& u,
                         const MildSolverConfig& cfg, const DyadicSystem& sys) {
    const double dt = cfg.T / cfg.steps;
    for (std::size_t i = 0; i < u.size(); ++i) {
        SampledField f = to_physical(
            SampledField::from_spectrum(g, u[i]));
        if (cfg.record_norm_trace)
            tr.norm_trace.push_back(ktl_norm(f, cfg.norm_params, sys));
        if (i % static_cast<std::size_t>(cfg.snapshot_stride) == 0 ||
            i + 1 == u.size()) {
            tr.snapshot_times.push_back(dt * static_cast<double>(i));
            tr.states.push_back(std::move(f));
        }
    }
    if (cfg.record_norm_trace) {
        for (std::size_t i = 0; i < tr.norm_trace.size(); ++i) {
            if (tr.norm_trace[i] > cfg.blowup_threshold) {
                tr.status = SolveStatus::blown_up;
                tr.failure_time = tr.times[i];
                break;
            }
        }
    }
}

}  // namespace

Trajectory solve_mild(const SampledField& u0, const LipFunction& G,
                      const MildSolverConfig& cfg, const DyadicSystem& sys) {
    cfg.validate();
    G.validate();
    if (!(u0.grid() == sys.grid))
        throw CompositionError("heat: initial data grid differs from dyadic system");
    const GridSpec& g = u0.grid();
    const int steps = cfg.steps;
    const double dt = cfg.T / steps;
    const std::size_t nbin = g.size();

    Trajectory tr;
    for (int i = 0; i <= steps; ++i) tr.times.push_back(dt * i);

    // Semigroup tables: one-step decay and the exact per-node propagation of
    // the initial data.
    std::vector<double> estep(nbin);
    for (std::size_t k = 0; k < nbin; ++k) {
        const double r = g.freq_radius(k);
        estep[k] = std::exp(-dt * r * r);
    }
    const SampledField u0s = to_spectrum(u0);
    const std::vector<cplx>& u0spec = u0s.spectrum();
    Spectra base(steps + 1, std::vector<cplx>(nbin));
    for (int i = 0; i <= steps; ++i) {
        const double t = dt * i;
        for (std::size_t k = 0; k < nbin; ++k) {
            const double r = g.freq_radius(k);
            base[i][k] = u0spec[k] * std::exp(-t * r * r);
        }
    }

    Spectra cur = base;  // Picard iterate 0: the free evolution
    Spectra next(steps + 1, std::vector<cplx>(nbin));
    Spectra gf(steps + 1, std::vector<cplx>(nbin));
    std::vector<std::vector<cplx>> vals;
    std::vector<cplx> duh(nbin), carry(nbin);

    double prev_diff = -1.0;
    for (int it = 1; it <= cfg.picard_max; ++it) {
        tr.iterations = it;
        const SweepOutcome chk =
            to_values_checked(g, cur, cfg.blowup_threshold, vals);
        if (!chk.finite) {
            tr.status = SolveStatus::picard_diverged;
            tr.failure_time = tr.times[chk.first_bad_node];
            return tr;
        }
        if (chk.over_threshold) {
            tr.status = SolveStatus::blown_up;
            tr.failure_time = tr.times[chk.first_bad_node];
            return tr;
        }
        // G applied node-by-node, then back to spectra.
        for (int i = 0; i <= steps; ++i) {
            auto& vi = vals[i];
            for (auto& z : vi) z = cplx(G.value(z.real()), 0.0);
            detail::dft_forward(g, vi.data(), gf[i].data());
        }
        // Trapezoid Duhamel via the exponential recurrence
        //   D_{i} = E*(D_{i-1} + dt/2 * g_{i-1}) + dt/2 * g_i.
        std::fill(duh.begin(), duh.end(), cplx(0.0));
        next[0] = base[0];
        double diff = 0.0, ref = 0.0;
        for (int i = 1; i <= steps; ++i) {
            for (std::size_t k = 0; k < nbin; ++k) {
                carry[k] = estep[k] * (duh[k] + 0.5 * dt * gf[i - 1][k]) +
                           0.5 * dt * gf[i][k];
            }
            duh = carry;
            auto& ni = next[i];
            for (std::size_t k = 0; k < nbin; ++k) ni[k] = base[i][k] + duh[k];
            // max-over-time spectral L^2 of change and of the new iterate
            double d2 = 0.0, r2 = 0.0;
            for (std::size_t k = 0; k < nbin; ++k) {
                d2 += std::norm(ni[k] - cur[i][k]);
                r2 += std::norm(ni[k]);
            }
            diff = std::max(diff, std::sqrt(d2 * g.freq_cell_measure()));
            ref = std::max(ref, std::sqrt(r2 * g.freq_cell_measure()));
        }
        if (prev_diff > 0.0) tr.contraction_ratios.push_back(diff / prev_diff);
        prev_diff = diff;
        cur.swap(next);
        if (diff <= cfg.picard_tol * std::max(ref, 1e-300)) {
            tr.status = SolveStatus::completed;
            finalize_trajectory(tr, g, cur, cfg, sys);
            return tr;
        }
    }
    // Budget exhausted while still moving: report as non-convergence.
    tr.status = SolveStatus::picard_diverged;
    tr.failure_time = cfg.T;
    return tr;
}

Trajectory solve_marching(const SampledField& u0, const LipFunction& G,
                          const MildSolverConfig& cfg, const DyadicSystem& sys) {
    cfg.validate();
    G.validate();
    if (!(u0.grid() == sys.grid))
        throw CompositionError("heat: initial data grid differs from dyadic system");
    const GridSpec& g = u0.grid();
    const int steps = cfg.steps;
    const double dt = cfg.T / steps;
    const std::size_t nbin = g.size();

    Trajectory tr;
    for (int i = 0; i <= steps; ++i) tr.times.push_back(dt * i);

    std::vector<double> estep(nbin);
    for (std::size_t k = 0; k < nbin; ++k) {
        const double r = g.freq_radius(k);
        estep[k] = std::exp(-dt * r * r);
    }

    Spectra u(steps + 1, std::vector<cplx>(nbin));
    const SampledField u0s = to_spectrum(u0);
    u[0] = u0s.spectrum();
    std::vector<cplx> vcur(nbin), gcur(nbin), pred(nbin), gpred(nbin);
    for (int i = 0; i < steps; ++i) {
        detail::dft_backward(g, u[i].data(), vcur.data());
        double sup = 0.0;
        for (const cplx& z : vcur) sup = std::max(sup, std::abs(z));
        if (!std::isfinite(sup) || sup > cfg.blowup_threshold) {
            tr.status = std::isfinite(sup) ? SolveStatus::blown_up
                                           : SolveStatus::picard_diverged;
            tr.failure_time = tr.times[i];
            u.resize(i + 1);
            break;
        }
        for (auto& z : vcur) z = cplx(G.value(z.real()), 0.0);
        detail::dft_forward(g, vcur.data(), gcur.data());
        // Exponential Heun: predictor with frozen G, trapezoid corrector.
        for (std::size_t k = 0; k < nbin; ++k)
            pred[k] = estep[k] * (u[i][k] + dt * gcur[k]);
        detail::dft_backward(g, pred.data(), vcur.data());
        for (auto& z : vcur) z = cplx(G.value(z.real()), 0.0);
        detail::dft_forward(g, vcur.data(), gpred.data());
        for (std::size_t k = 0; k < nbin; ++k)
            u[i + 1][k] = estep[k] * (u[i][k] + 0.5 * dt * gcur[k]) +
                          0.5 * dt * gpred[k];
    }
    if (tr.status == SolveStatus::completed) {
        finalize_trajectory(tr, g, u, cfg, sys);
    } else {
        // Partial trace up to the failure node.
        const double dt_local = dt;
        for (std::size_t i = 0; i < u.size(); ++i) {
            SampledField f = to_physical(SampledField::from_spectrum(g, u[i]));
            if (cfg.record_norm_trace)
                tr.norm_trace.push_back(ktl_norm(f, cfg.norm_params, sys));
            tr.snapshot_times.push_back(dt_local * static_cast<double>(i));
            tr.states.push_back(std::move(f));
        }
    }
    tr.iterations = 1;
    return tr;
}

ExistenceBound existence_bound(const ExistenceBoundInput& in) {
    if (!(in.mu > 1)) throw ParamError("heat: existence bound needs mu > 1");
    if (!(in.p > 0) || !(in.q > 0))
        throw ParamError("heat: existence bound needs positive p, q");
    if (!(in.C > 0)) throw ParamError("heat: contraction constant must be positive");
    if (!(in.u0_norm > 0))
        throw ParamError("heat: initial norm must be positive");
    if (in.dim != 1 && in.dim != 2) throw ParamError("heat: dim must be 1 or 2");

    ExistenceBound out;
    const double npa = in.dim / in.p + in.alpha;
    out.s_critical = npa - 2.0 / (in.mu - 1.0);
    const double gap = in.s - out.s_critical;
    out.theta = 0.5 * gap;
    if (!(gap > 0)) {
        out.prefactor = 0.0;
        out.T_bound.reset();
        return out;
    }
    const double e1 = 2.0 / ((in.mu - 1.0) * gap);  // exponent 2/((mu-1)(s-s_bar))
    const double e2 = 2.0 / gap;                    // exponent 2/(s-s_bar)
    const double mu_gap = std::pow(in.mu, -1.0 / (in.mu - 1.0)) -
                          std::pow(in.mu, -in.mu / (in.mu - 1.0));
    out.prefactor = std::pow(1.0 / in.C, e1) * std::pow(mu_gap, e2);
    out.T_bound = out.prefactor * std::pow(2.0, -e1) *
                  std::pow(1.0 - 1.0 / in.mu, in.mu - 1.0) *
                  std::pow(in.u0_norm, -e2);
    return out;
}

double estimate_contraction_constant(const SampledField& u0, const LipFunction& G,
                                     const MildSolverConfig& cfg,
                                     const DyadicSystem& sys, double mu,
                                     double s_minus_sbar) {
    if (!(mu > 1) || !(s_minus_sbar > 0))
        throw ParamError("heat: contraction estimate needs mu > 1 and s > s_bar");
    MildSolverConfig pilot = cfg;
    pilot.record_norm_trace = true;
    Trajectory tr = solve_mild(u0, G, pilot, sys);
    if (tr.status != SolveStatus::completed)
        throw InputError("heat: contraction pilot run did not converge");
    std::vector<double> usable;
    for (double r : tr.contraction_ratios)
        if (std::isfinite(r) && r > 0) usable.push_back(r);
    if (usable.empty() || tr.norm_trace.empty())
        throw InputError("heat: contraction pilot produced no usable ratios");
    std::sort(usable.begin(), usable.end());
    const double rho = usable[usable.size() / 2];
    const double peak = *std::max_element(tr.norm_trace.begin(), tr.norm_trace.end());
    if (!(peak > 0)) throw InputError("heat: contraction pilot trajectory is zero");
    return rho / (std::pow(cfg.T, 0.5 * (mu - 1.0) * s_minus_sbar) * 2.0 *
                  std::pow(peak, mu - 1.0));
}

BlowupMeasurement measure_blowup_time(const SampledField& u0, const LipFunction& G,
                                      const MildSolverConfig& base,
                                      const DyadicSystem& sys, double T_guess,
                                      double rel_resolution) {
    if (!(T_guess > 0)) throw InputError("heat: blow-up probe needs T_guess > 0");
    if (!(rel_resolution > 0 && rel_resolution < 0.5))
        throw InputError("heat: blow-up resolution must lie in (0, 0.5)");

    BlowupMeasurement out;
    auto completes = [&](double T) {
        MildSolverConfig cfg = base;
        cfg.T = T;
        cfg.record_norm_trace = false;
        cfg.snapshot_stride = std::max(cfg.steps, 1);
        ++out.solves;
        return solve_mild(u0, G, cfg, sys).status == SolveStatus::completed;
    };

    double lo = 0.0, hi = 0.0, T = T_guess;
    if (completes(T)) {
        lo = T;
        for (int i = 0; i < 60 && hi == 0.0; ++i) {
            T *= 2.0;
            if (completes(T)) lo = T; else hi = T;
        }
        if (hi == 0.0)
            throw InputError("heat: no blow-up found below 2^60 * T_guess");
    } else {
        hi = T;
        for (int i = 0; i < 60 && lo == 0.0; ++i) {
            T *= 0.5;
            if (completes(T)) lo = T; else hi = T;
        }
        if (lo == 0.0)
            throw InputError("heat: solver fails at arbitrarily small horizons");
    }
    while (hi - lo > rel_resolution * hi) {
        const double mid = 0.5 * (lo + hi);
        if (completes(mid)) lo = mid; else hi = mid;
    }
    out.bracket_lo = lo;
    out.bracket_hi = hi;
    out.T0 = 0.5 * (lo + hi);
    return out;
}

}  // namespace herzlab
