// Dyadic decomposition: cutoff profile, partition of unity, level supports,
// reconstruction, a direct-quadrature convolution cross-check, and the
// Peetre maximal function.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "herzlab/lpdecomp.h"
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

}  // namespace

TEST_CASE("cutoff profile hits its plateaus exactly") {
    CHECK(cutoff_profile(0.0) == 1.0);
    CHECK(cutoff_profile(0.5) == 1.0);
    CHECK(cutoff_profile(1.0) == 1.0);
    CHECK(cutoff_profile(1.5) == 0.0);
    CHECK(cutoff_profile(7.0) == 0.0);
    double prev = 1.0;
    for (double r = 1.05; r < 1.5; r += 0.05) {
        const double v = cutoff_profile(r);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("default level count stays inside the resolved band") {
    // Nyquist = pi N / (2X); the top level support 3*2^{j_max-1} must fit.
    const GridSpec g = make_grid(1, M_PI, 4096);
    CHECK(g.nyquist() == doctest::Approx(2048.0));
    CHECK(default_j_max(g) == 10);
    CHECK(3.0 * std::pow(2.0, default_j_max(g) - 1) < g.nyquist());

    const GridSpec g2 = make_grid(2, M_PI, 256);
    CHECK(default_j_max(g2) == 6);

    CHECK_THROWS_AS(build_dyadic_system(g, 12), ResolutionError);
}

TEST_CASE("level multipliers form an exact partition on the resolved band") {
    for (const GridSpec& g : {make_grid(1, M_PI, 256), make_grid(2, 2.0, 32)}) {
        const DyadicSystem sys = build_dyadic_system(g);
        CHECK(sys.levels() == sys.j_max + 1);
        const double top = std::pow(2.0, sys.j_max);
        for (std::size_t k = 0; k < g.size(); ++k) {
            double sum = 0.0;
            for (const auto& m : sys.multipliers) sum += m[k];
            const double r = g.freq_radius(k);
            if (r <= top) {
                CHECK(std::abs(sum - 1.0) <= 1e-12);
            } else {
                // Above the top level the sum telescopes to the outer cutoff.
                CHECK(sum == doctest::Approx(cutoff_profile(r / top)).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("level supports are dyadic and only neighbors overlap") {
    const GridSpec g = make_grid(1, M_PI, 512);
    const DyadicSystem sys = build_dyadic_system(g);
    for (int j = 0; j <= sys.j_max; ++j) {
        const double lo = (j == 0) ? 0.0 : std::pow(2.0, j - 1);
        const double hi = (j == 0) ? 1.5 : 3.0 * std::pow(2.0, j - 1);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double r = g.freq_radius(k);
            const double m = sys.multipliers[j][k];
            CHECK(m >= 0.0);
            CHECK(m <= 1.0);
            if (r < lo || r > hi) CHECK(m == 0.0);
        }
    }
    for (int j = 0; j <= sys.j_max; ++j)
        for (int l = j + 2; l <= sys.j_max; ++l)
            for (std::size_t k = 0; k < g.size(); ++k)
                CHECK(sys.multipliers[j][k] * sys.multipliers[l][k] == 0.0);
}

TEST_CASE("band-limited fields reconstruct exactly from their blocks") {
    for (const GridSpec& g : {make_grid(1, M_PI, 512), make_grid(2, M_PI, 32)}) {
        const DyadicSystem sys = build_dyadic_system(g);
        const SampledField f = random_band_field(sys, 0.5, 99);
        SampledField sum = lp_block(f, sys, 0);
        for (int j = 1; j <= sys.j_max; ++j)
            sum = field_add(sum, lp_block(f, sys, j));
        CHECK(rel_l2_error(sum, f) < 1e-12);
    }
    const GridSpec g = make_grid(1, M_PI, 64);
    const DyadicSystem sys = build_dyadic_system(g);
    const SampledField f = random_band_field(sys, 0.5, 1);
    CHECK_THROWS_AS(lp_block(f, sys, -1), InputError);
    CHECK_THROWS_AS(lp_block(f, sys, sys.j_max + 1), InputError);
}

TEST_CASE("block projection equals direct convolution with its kernel") {
    // phi_j * f(x) = (2 pi)^{-n/2} h^n sum_y K_j(x - y) f(y) with K_j the
    // inverse transform of the level multiplier; quadrature on the torus.
    const GridSpec g = make_grid(1, M_PI, 64);
    const DyadicSystem sys = build_dyadic_system(g);
    const int j = 1;
    const SampledField f = random_band_field(sys, 0.3, 7);
    const SampledField kernel = to_physical(SampledField::from_spectrum(
        g, std::vector<cplx>(sys.multipliers[j].begin(), sys.multipliers[j].end())));
    const int N = g.points_per_axis;
    std::vector<cplx> direct(g.size());
    for (int i = 0; i < N; ++i) {
        cplx acc = 0.0;
        for (int y = 0; y < N; ++y)
            acc += kernel.values()[((i - y) % N + N) % N] * f.values()[y];
        direct[i] = acc * g.cell_measure() / std::sqrt(2.0 * M_PI);
    }
    const SampledField block = lp_block(f, sys, j);
    for (std::size_t i = 0; i < g.size(); ++i)
        CHECK(std::abs(direct[i] - block.values()[i]) < 1e-10);
}

TEST_CASE("Peetre maximal function dominates the block and matches a direct sup") {
    const GridSpec g = make_grid(1, 2.0, 32);
    const DyadicSystem sys = build_dyadic_system(g);
    const int j = 1;
    const SampledField f = random_band_field(sys, 0.5, 21);
    PeetreParams pp;
    pp.a = 2.0;
    const std::vector<double> peetre = peetre_maximal(f, sys, j, pp);
    const SampledField block = lp_block(f, sys, j);
    const double w = std::pow(2.0, j);

    double sup_block = 0.0;
    for (const cplx& z : block.values()) sup_block = std::max(sup_block, std::abs(z));

    const int N = g.points_per_axis;
    for (int i = 0; i < N; ++i) {
        CHECK(peetre[i] >= std::abs(block.values()[i]) - 1e-14);
        CHECK(peetre[i] <= sup_block + 1e-14);
        double direct = 0.0;
        for (int y = 0; y < N; ++y) {
            const double d = periodic_axis_distance(g, i, y);
            direct = std::max(direct, std::abs(block.values()[y]) /
                                          std::pow(1.0 + w * d, pp.a));
        }
        CHECK(peetre[i] == doctest::Approx(direct).epsilon(1e-12));
    }
}
