// Heat semigroup, Duhamel quadrature, Picard solver, existence-time bound,
// and blow-up time measurement, each against an independent closed form.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "herzlab/heat.h"
#include "herzlab/util.h"
#include "herzlab/verify.h"

using namespace herzlab;

namespace {

GridSpec make_grid(int dim, double X, int N) {
    GridSpec g;
    g.dim = dim;
    g.halfwidth = X;
    g.points_per_axis = N;
    return g;
}

SampledField constant_field(const GridSpec& g, double c) {
    return SampledField::from_values(g, std::vector<cplx>(g.size(), cplx(c, 0.0)));
}

SampledField gaussian(const GridSpec& g, double variance) {
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.radius(i);
        v[i] = std::exp(-0.5 * r * r / variance);
    }
    return SampledField::from_values(g, std::move(v));
}

double sup_field_diff(const SampledField& a, const SampledField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
    return m;
}

MildSolverConfig scalar_config(const GridSpec& g, double T, int steps) {
    MildSolverConfig cfg;
    cfg.T = T;
    cfg.steps = steps;
    cfg.picard_max = 4000;
    cfg.norm_params.herz = HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    cfg.norm_params.s = 0.4;
    cfg.norm_params.beta = 2.0;
    return cfg;
}

}  // namespace

TEST_CASE("heat flow of a Gaussian matches the closed form") {
    // e^{t Lap} e^{-x^2/2} = (1+2t)^{-1/2} e^{-x^2/(2(1+2t))}.
    const GridSpec g = make_grid(1, 12.0, 4096);
    const SampledField f = gaussian(g, 1.0);
    for (double t : {0.1, 0.5}) {
        const SampledField u = heat_propagate(f, t);
        double err = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double x = g.point(i)[0];
            const double exact =
                std::exp(-0.5 * x * x / (1.0 + 2.0 * t)) / std::sqrt(1.0 + 2.0 * t);
            err = std::max(err, std::abs(u.values()[i] - cplx(exact, 0.0)));
        }
        CHECK(err < 1e-10);
    }
}

TEST_CASE("semigroup property and time-zero identity") {
    const GridSpec g = make_grid(1, M_PI, 256);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField f = random_band_field(sys, 0.5, 3);
    const SampledField chained = heat_propagate(heat_propagate(f, 0.07), 0.13);
    CHECK(sup_field_diff(chained, heat_propagate(f, 0.2)) < 1e-12);
    CHECK(sup_field_diff(heat_propagate(f, 0.0), to_physical(f)) < 1e-14);
    CHECK_THROWS_AS(heat_propagate(f, -0.1), InputError);
}

TEST_CASE("Duhamel integral of a constant history matches each mode") {
    // For history identically g: integral = (1 - e^{-t|xi|^2})/|xi|^2 * g_hat
    // per mode (t * g_hat at xi = 0).  Low modes keep the trapezoid error
    // far below the tolerance.
    const GridSpec g = make_grid(1, M_PI, 64);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField h = random_band_field(sys, 0.5, 17);
    const double t = 0.3;
    const int len = 2049;
    const std::vector<SampledField> history(len, h);
    const SampledField duh = to_spectrum(duhamel_term(history, t));
    const SampledField hs = to_spectrum(h);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double r = g.freq_radius(k);
        if (r > 2.0) continue;
        const cplx exact = (r == 0.0) ? t * hs.spectrum()[k]
                                      : (1.0 - std::exp(-t * r * r)) / (r * r) *
                                            hs.spectrum()[k];
        CHECK(std::abs(duh.spectrum()[k] - exact) < 1e-6);
    }

    CHECK_THROWS_AS(duhamel_term(history, 0.0), InputError);
    CHECK_THROWS_AS(duhamel_term({h}, 0.3), InputError);
    const SampledField other =
        random_band_field(build_dyadic_system(make_grid(1, M_PI, 128)), 0.5, 1);
    CHECK_THROWS_AS(duhamel_term({h, other}, 0.3), CompositionError);
}

TEST_CASE("constant data reduces the solver to the scalar Riccati equation") {
    // u0 = 1, G(u) = u^2: u(t) = 1/(1-t), so u(0.5) = 2.
    const GridSpec g = make_grid(1, M_PI, 16);
    const DyadicSystem sys = build_dyadic_system(g);
    const MildSolverConfig cfg = scalar_config(g, 0.5, 512);
    const Trajectory tr =
        solve_mild(constant_field(g, 1.0), LipFunction::power(2.0), cfg, sys);
    REQUIRE(tr.status == SolveStatus::completed);
    CHECK(tr.iterations > 1);
    CHECK(!tr.contraction_ratios.empty());
    CHECK(tr.times.size() == 513);
    CHECK(tr.norm_trace.size() == 513);
    REQUIRE(!tr.states.empty());
    const SampledField& last = tr.states.back();
    CHECK(tr.snapshot_times.back() == doctest::Approx(0.5));
    CHECK(last.values()[0].real() == doctest::Approx(2.0).epsilon(1e-3));

    const Trajectory tm =
        solve_marching(constant_field(g, 1.0), LipFunction::power(2.0), cfg, sys);
    REQUIRE(tm.status == SolveStatus::completed);
    CHECK(tm.states.back().values()[0].real() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("Picard and marching integrators agree on a smooth problem") {
    const GridSpec g = make_grid(1, M_PI, 64);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField u0 = gaussian(g, 0.25);
    MildSolverConfig cfg = scalar_config(g, 0.05, 256);
    cfg.snapshot_stride = 256;
    const Trajectory a = solve_mild(u0, LipFunction::power(2.0), cfg, sys);
    const Trajectory b = solve_marching(u0, LipFunction::power(2.0), cfg, sys);
    REQUIRE(a.status == SolveStatus::completed);
    REQUIRE(b.status == SolveStatus::completed);
    CHECK(rel_l2_error(a.states.back(), b.states.back()) < 1e-3);
}

TEST_CASE("zero nonlinearity reproduces the free evolution") {
    const GridSpec g = make_grid(1, M_PI, 64);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField u0 = gaussian(g, 0.5);
    const MildSolverConfig cfg = scalar_config(g, 0.2, 64);
    const Trajectory tr = solve_mild(u0, LipFunction::zero(2.0), cfg, sys);
    REQUIRE(tr.status == SolveStatus::completed);
    CHECK(tr.iterations <= 2);  // fixed point after one sweep
    CHECK(sup_field_diff(tr.states.back(), heat_propagate(u0, 0.2)) < 1e-10);
}

TEST_CASE("solver status distinguishes blow-up from non-convergence") {
    const GridSpec g = make_grid(1, M_PI, 16);
    const DyadicSystem sys = build_dyadic_system(g);
    MildSolverConfig cfg = scalar_config(g, 2.0, 256);
    const Trajectory tr =
        solve_mild(constant_field(g, 1.0), LipFunction::power(2.0), cfg, sys);
    CHECK(tr.status == SolveStatus::blown_up);
    CHECK(tr.failure_time > 0.0);
    CHECK(tr.failure_time <= 2.0);

    MildSolverConfig capped = scalar_config(g, 0.5, 64);
    capped.picard_max = 1;
    const Trajectory td =
        solve_mild(constant_field(g, 1.0), LipFunction::power(2.0), capped, sys);
    CHECK(td.status == SolveStatus::picard_diverged);
}

TEST_CASE("solver config validation") {
    const GridSpec g = make_grid(1, M_PI, 16);
    MildSolverConfig cfg = scalar_config(g, 0.5, 64);
    cfg.T = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ParamError);
    cfg = scalar_config(g, 0.5, 1);
    CHECK_THROWS_AS(cfg.validate(), ParamError);
    cfg = scalar_config(g, 0.5, 64);
    cfg.picard_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ParamError);
    cfg = scalar_config(g, 0.5, 64);
    cfg.snapshot_stride = 0;
    CHECK_THROWS_AS(cfg.validate(), ParamError);
}

TEST_CASE("existence bound closed forms") {
    // mu = 2, n/p + alpha = 1/2, s chosen so the criticality gap is 1, C = 1,
    // unit data: prefactor (1/4)^2 = 1/16 and horizon 1/16 * 1/4 * 1/2.
    ExistenceBoundInput in;
    in.mu = 2.0;
    in.s = -0.5;
    in.p = 2.0;
    in.q = 2.0;
    in.alpha = 0.0;
    in.dim = 1;
    in.C = 1.0;
    in.u0_norm = 1.0;
    const ExistenceBound eb = existence_bound(in);
    CHECK(eb.s_critical == doctest::Approx(-1.5));
    CHECK(eb.theta == doctest::Approx(0.5));
    CHECK(eb.prefactor == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    REQUIRE(eb.T_bound.has_value());
    CHECK(*eb.T_bound == doctest::Approx(1.0 / 128.0).epsilon(1e-12));

    ExistenceBoundInput in3 = in;
    in3.mu = 3.0;
    in3.s = 0.4;
    const ExistenceBound eb3 = existence_bound(in3);
    CHECK(eb3.s_critical == doctest::Approx(-0.5));
    CHECK(eb3.theta == doctest::Approx(0.45));
    CHECK(eb3.T_bound.has_value());

    ExistenceBoundInput sub = in;
    sub.s = -2.0;  // below the critical smoothness
    const ExistenceBound ebs = existence_bound(sub);
    CHECK_FALSE(ebs.T_bound.has_value());

    ExistenceBoundInput bad = in;
    bad.mu = 1.0;
    CHECK_THROWS_AS(existence_bound(bad), ParamError);
    bad = in;
    bad.u0_norm = 0.0;
    CHECK_THROWS_AS(existence_bound(bad), ParamError);
}

TEST_CASE("empirical contraction constant is positive and finite") {
    const GridSpec g = make_grid(1, M_PI, 32);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField u0 = gaussian(g, 0.25);
    const MildSolverConfig cfg = scalar_config(g, 0.05, 64);
    const double C = estimate_contraction_constant(u0, LipFunction::power(2.0),
                                                   cfg, sys, 2.0, 1.9);
    CHECK(C > 0.0);
    CHECK(std::isfinite(C));
}

TEST_CASE("measured blow-up time brackets the scalar closed form") {
    // u' = u^2 from u(0) = 1 blows up at exactly t = 1.
    const GridSpec g = make_grid(1, M_PI, 16);
    const DyadicSystem sys = build_dyadic_system(g);
    const MildSolverConfig base = scalar_config(g, 0.5, 256);
    const BlowupMeasurement m = measure_blowup_time(
        constant_field(g, 1.0), LipFunction::power(2.0), base, sys, 0.5);
    CHECK(m.T0 == doctest::Approx(1.0).epsilon(0.02));
    CHECK(m.bracket_lo < m.T0);
    CHECK(m.T0 < m.bracket_hi);
    CHECK(m.solves >= 2);
}
