// Annulus-weighted norms: closed-form oracles, L^p consistency, exponent
// monotonicity, quasi-triangle property, interpolation arithmetic, and the
// breakdown table.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "herzlab/herz.h"
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

/// Bump of radius `width` around x = center (first axis), physically real.
SampledField offset_bump(const GridSpec& g, double center, double width) {
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto p = g.point(i);
        const double dx = p[0] - center;
        const double r2 = dx * dx + (g.dim == 2 ? p[1] * p[1] : 0.0);
        v[i] = bump_profile(std::sqrt(r2) / width);
    }
    return SampledField::from_values(g, std::move(v));
}

}  // namespace

TEST_CASE("parameter validation") {
    const GridSpec g = make_grid(1, 2.0, 64);
    HerzParams hp = HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    CHECK_NOTHROW(hp.validate(1));
    CHECK(hp.k_min == static_cast<int>(std::ceil(std::log2(g.spacing()))) + 1);
    CHECK(hp.k_max == 1);  // floor(log2 2.0)

    HerzParams bad = hp;
    bad.p = 0.0;
    CHECK_THROWS_AS(bad.validate(1), ParamError);
    bad = hp;
    bad.q = -1.0;
    CHECK_THROWS_AS(bad.validate(1), ParamError);
    bad = hp;
    bad.alpha = -0.5;  // not > -n/p = -0.5
    CHECK_THROWS_AS(bad.validate(1), ParamError);
    bad = hp;
    bad.k_min = bad.k_max + 1;
    CHECK_THROWS_AS(bad.validate(1), ParamError);

    TLParams tp;
    tp.herz = hp;
    tp.beta = 0.0;
    CHECK_THROWS_AS(tp.validate(1), ParamError);
}

TEST_CASE("exponent thresholds sigma_p and sigma_p_beta") {
    TLParams tp;
    tp.herz.p = 0.5;
    tp.beta = 2.0;
    CHECK(tp.sigma_p(1) == doctest::Approx(1.0));
    CHECK(tp.sigma_p(2) == doctest::Approx(2.0));
    tp.beta = 0.4;
    CHECK(tp.sigma_p_beta(1) == doctest::Approx(1.5));
    tp.herz.p = 3.0;
    tp.beta = 2.0;
    CHECK(tp.sigma_p(1) == doctest::Approx(0.0));
    CHECK(tp.sigma_p_beta(1) == doctest::Approx(0.0));
}

TEST_CASE("annulus indicator has a closed-form weighted norm") {
    // f = indicator of {1 < |x| <= 2}: only annulus k = 1 contributes, with
    // ||f chi||_2 = sqrt(2) and weight 2^{k alpha} = 2.
    const GridSpec g = make_grid(1, 4.0, 256);
    std::vector<cplx> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double r = g.radius(i);
        v[i] = (r > 1.0 && r <= 2.0) ? 1.0 : 0.0;
    }
    const SampledField f = SampledField::from_values(g, std::move(v));
    const HerzParams hp = HerzParams::for_grid(g, 2.0, 1.0, 1.0);
    CHECK(herz_norm(f, hp) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));

    // With q = inf the aggregation is a sup over annuli: same single term.
    HerzParams hs = hp;
    hs.q = kInf;
    CHECK(herz_norm(f, hs) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
}

TEST_CASE("alpha = 0, q = p reduces to the Lebesgue norm") {
    const GridSpec g1 = make_grid(1, 4.0, 1024);
    const GridSpec g2 = make_grid(2, 4.0, 128);
    for (const GridSpec& g : {g1, g2}) {
        const SampledField f = offset_bump(g, 1.3, 0.3);
        for (double p : {1.5, 2.0, 4.0}) {
            const HerzParams hp = HerzParams::for_grid(g, p, p, 0.0);
            const double h = herz_norm(f, hp);
            const double l = field_lp_norm(f, p);
            CHECK(std::abs(h - l) <= 1e-12 * l);
        }
    }
}

TEST_CASE("scalar-table overload agrees with the field overload") {
    const GridSpec g = make_grid(1, 2.0, 64);
    Rng rng(3);
    std::vector<cplx> v(g.size());
    std::vector<double> mags(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        v[i] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        mags[i] = std::abs(v[i]);
    }
    const SampledField f = SampledField::from_values(g, std::move(v));
    const HerzParams hp = HerzParams::for_grid(g, 1.5, 3.0, 0.2);
    CHECK(herz_norm(f, hp) == doctest::Approx(herz_norm(g, mags, hp)).epsilon(1e-14));
}

TEST_CASE("norm decreases as the annulus aggregation exponent grows") {
    const GridSpec g = make_grid(1, 4.0, 256);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField f = random_band_field(sys, 0.5, 11);
    double prev = kInf;
    for (double q : {0.5, 1.0, 2.0, 4.0, kInf}) {
        const HerzParams hp = HerzParams::for_grid(g, 2.0, q, 0.1);
        const double n = herz_norm(f, hp);
        CHECK(n <= prev * (1.0 + 1e-12));
        prev = n;
    }
}

TEST_CASE("quasi-triangle inequality with the stated constant") {
    const GridSpec g = make_grid(1, 2.0, 128);
    const DyadicSystem sys = build_dyadic_system(g);
    CHECK(quasi_triangle_constant(2.0, 2.0) == doctest::Approx(2.0));
    CHECK(quasi_triangle_constant(0.5, 1.0) == doctest::Approx(4.0));
    CHECK(quasi_triangle_constant(1.0, 0.5) == doctest::Approx(4.0));

    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const SampledField a = random_band_field(sys, 0.4, 2 * seed);
        const SampledField b = random_band_field(sys, 0.6, 2 * seed + 1);
        const SampledField sum = field_add(a, b);
        for (double p : {0.7, 2.0}) {
            for (double q : {0.5, 2.0}) {
                const HerzParams hp = HerzParams::for_grid(g, p, q, 0.0);
                const double C = quasi_triangle_constant(p, q);
                CHECK(herz_norm(sum, hp) <=
                      C * (herz_norm(a, hp) + herz_norm(b, hp)) * (1 + 1e-12));

                TLParams tp;
                tp.herz = hp;
                tp.s = 0.3;
                tp.beta = q;
                const double Cb = quasi_triangle_constant(p, std::min(q, tp.beta));
                CHECK(ktl_norm(sum, tp, sys) <=
                      Cb * (ktl_norm(a, tp, sys) + ktl_norm(b, tp, sys)) *
                          (1 + 1e-12));
            }
        }
    }
}

TEST_CASE("level aggregation at beta = 2^10 approximates the sup") {
    const GridSpec g = make_grid(1, 2.0, 256);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField f = random_band_field(sys, 0.5, 5);
    TLParams tp;
    tp.herz = HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    tp.s = 0.5;
    tp.beta = std::pow(2.0, 10);
    const double big = ktl_norm(f, tp, sys);
    tp.beta = kInf;
    const double sup = ktl_norm(f, tp, sys);
    CHECK(big >= sup * (1 - 1e-12));           // ell^beta dominates ell^inf
    CHECK(std::abs(big - sup) <= 0.05 * sup);  // and is close at beta = 2^10
}

TEST_CASE("parameter interpolation is harmonic in exponents, affine in weights") {
    const GridSpec g = make_grid(1, 2.0, 64);
    TLParams a, b;
    a.herz = HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    a.s = 0.3;
    a.beta = 2.0;
    b.herz = HerzParams::for_grid(g, 4.0, 1.0, 0.5);
    b.s = 0.7;
    b.beta = 4.0;

    const TLParams mid = interpolate_params(a, b, 0.5);
    CHECK(mid.herz.p == doctest::Approx(8.0 / 3.0));  // 1/p = (1/2)(1/2 + 1/4)
    CHECK(mid.herz.q == doctest::Approx(4.0 / 3.0));
    CHECK(mid.beta == doctest::Approx(8.0 / 3.0));
    CHECK(mid.herz.alpha == doctest::Approx(0.25));
    CHECK(mid.s == doctest::Approx(0.5));

    const TLParams at0 = interpolate_params(a, b, 0.0);
    CHECK(at0.herz.p == doctest::Approx(a.herz.p));
    CHECK(at0.s == doctest::Approx(a.s));
    const TLParams at1 = interpolate_params(a, b, 1.0);
    CHECK(at1.herz.q == doctest::Approx(b.herz.q));
    CHECK(at1.beta == doctest::Approx(b.beta));

    TLParams c = b;
    c.herz.k_min += 1;  // annulus ranges must match
    CHECK_THROWS_AS(interpolate_params(a, c, 0.5), CompositionError);
    CHECK_THROWS_AS(interpolate_params(a, b, 1.5), InputError);
}

TEST_CASE("breakdown table reassembles the norm when p = q = beta") {
    const GridSpec g = make_grid(1, 2.0, 128);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField f = random_band_field(sys, 0.4, 8);
    TLParams tp;
    tp.herz = HerzParams::for_grid(g, 2.0, 2.0, 0.3);
    tp.s = 0.6;
    tp.beta = 2.0;

    const KtlBreakdown bd = ktl_breakdown(f, tp, sys);
    CHECK(bd.levels.size() == static_cast<std::size_t>(sys.levels()));
    CHECK(bd.annuli.size() ==
          static_cast<std::size_t>(tp.herz.k_max - tp.herz.k_min + 1));
    double acc = 0.0;
    for (const auto& row : bd.entry)
        for (double e : row) acc += e * e;
    CHECK(std::sqrt(acc) == doctest::Approx(ktl_norm(f, tp, sys)).epsilon(1e-12));
}

TEST_CASE("Peetre-variant norm dominates the plain norm and stays comparable") {
    const GridSpec g = make_grid(1, 2.0, 128);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField f = random_band_field(sys, 0.5, 13);
    TLParams tp;
    tp.herz = HerzParams::for_grid(g, 2.0, 2.0, 0.0);
    tp.s = 0.5;
    tp.beta = 2.0;
    PeetreParams pp;
    pp.a = 2.0;
    CHECK(peetre_equivalence_ok(pp, tp, 1));
    pp.a = 0.3;  // below n / min(p, beta) = 0.5
    CHECK_FALSE(peetre_equivalence_ok(pp, tp, 1));

    pp.a = 2.0;
    const double plain = ktl_norm(f, tp, sys);
    const double peetre = ktl_norm_peetre(f, tp, sys, pp);
    CHECK(peetre >= plain * (1 - 1e-12));
    CHECK(peetre <= 5.0 * plain);
}
