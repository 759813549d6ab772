/**
 * @file nonlinear.cpp
 */
#include "herzlab/nonlinear.h"

#include <algorithm>
#include <cmath>

#include "herzlab/util.h"

namespace herzlab {

// --- LipFunction ----------------------------------------------------------

int LipFunction::order_L() const {
    return static_cast<int>(std::ceil(mu)) - 1;
}

double LipFunction::holder_nu() const {
    return mu - order_L();
}

double LipFunction::eval(double t) const {
    if (!value) throw CapabilityError("nonlinear: evaluator missing");
    return value(t);
}

double LipFunction::derivative(int l, double t) const {
    if (l == 0) return eval(t);
    if (l < 0 || l > order_L())
        throw InputError("nonlinear: derivative order outside [0, L]");
    if (static_cast<std::size_t>(l) <= derivs.size() && derivs[l - 1])
        return derivs[l - 1](t);
    if (!allow_fd)
        throw CapabilityError("nonlinear: derivative evaluator missing and fallback disabled");
    // Central difference on the next available lower derivative.
    const double d = fd_step;
    return (derivative(l - 1, t + d) - derivative(l - 1, t - d)) / (2.0 * d);
}

void LipFunction::validate() const {
    if (!(mu > 0) || !std::isfinite(mu))
        throw ParamError("nonlinear: mu must be positive and finite");
    if (!value) throw CapabilityError("nonlinear: evaluator missing");
    for (int l = 0; l <= order_L(); ++l) {
        if (std::abs(derivative(l, 0.0)) > 1e-8)
            throw ParamError("nonlinear: G and its first L derivatives must vanish at 0");
    }
}

LipFunction LipFunction::power(double mu, double scale) {
    if (!(mu >= 1))
        throw ParamError("nonlinear: power family needs mu >= 1");
    LipFunction G;
    G.mu = mu;
    G.name = "power";
    G.value = [mu, scale](double t) {
        return t == 0.0 ? 0.0 : scale * t * std::pow(std::abs(t), mu - 1.0);
    };
    // l-th derivative of t|t|^{mu-1}: prod_{i<l}(mu-i) * sgn(t)^{l+1} |t|^{mu-l}.
    const int L = static_cast<int>(std::ceil(mu)) - 1;
    for (int l = 1; l <= L; ++l) {
        double coef = scale;
        for (int i = 0; i < l; ++i) coef *= (mu - i);
        G.derivs.push_back([mu, coef, l](double t) {
            if (t == 0.0) return 0.0;
            const double sgn = (t > 0 || l % 2 == 1) ? 1.0 : -1.0;
            return coef * sgn * std::pow(std::abs(t), mu - l);
        });
    }
    return G;
}

LipFunction LipFunction::zero(double mu) {
    LipFunction G;
    G.mu = mu;
    G.name = "zero";
    G.value = [](double) { return 0.0; };
    const int L = static_cast<int>(std::ceil(mu)) - 1;
    for (int l = 1; l <= L; ++l) G.derivs.push_back([](double) { return 0.0; });
    return G;
}

LipFunction LipFunction::linear() {
    LipFunction G;
    G.mu = 1.0;
    G.name = "linear";
    G.value = [](double t) { return t; };
    return G;
}

LipFunction LipFunction::by_name(const std::string& name, double mu, double scale) {
    if (name == "power") return power(mu, scale);
    if (name == "zero") return zero(mu);
    if (name == "linear") return linear();
    throw ParamError("nonlinear: unknown nonlinearity '" + name + "'");
}

// --- norm -----------------------------------------------------------------

double lip_norm(const LipFunction& G, double B, int samples, int pair_samples) {
    if (!(B > 0)) throw InputError("nonlinear: window bound B must be positive");
    if (samples < 16 || pair_samples < 8)
        throw InputError("nonlinear: too few sample points");
    G.validate();
    const int L = G.order_L();
    const double nu = G.holder_nu();

    // Weighted sup terms on a dense symmetric grid (t = 0 excluded: the
    // weight is singular there and the ratio extends by 0).
    double total = 0.0;
    for (int j = 0; j < L; ++j) {
        double sup = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double t = -B + 2.0 * B * (i + 0.5) / samples;
            if (std::abs(t) < 1e-12) continue;
            sup = std::max(sup, std::abs(G.derivative(j, t)) /
                                    std::pow(std::abs(t), G.mu - j));
        }
        total += sup;
    }

    // Hoelder-nu seminorm of G^{(L)}, pairwise over an even subsample.
    std::vector<double> pts(pair_samples), gl(pair_samples);
    for (int i = 0; i < pair_samples; ++i) {
        pts[i] = -B + 2.0 * B * (i + 0.5) / pair_samples;
        gl[i] = G.derivative(L, pts[i]);
    }
    double holder = 0.0;
    for (int i = 0; i < pair_samples; ++i) {
        for (int j = i + 1; j < pair_samples; ++j) {
            const double gap = std::abs(pts[i] - pts[j]);
            holder = std::max(holder, std::abs(gl[i] - gl[j]) / std::pow(gap, nu));
        }
    }
    return total + holder;
}

// --- composition and modulus ----------------------------------------------

SampledField compose(const LipFunction& G, const SampledField& f, double* max_imag) {
    if (!G.value) throw CapabilityError("nonlinear: evaluator missing");
    const auto& v = f.values();
    double worst = 0.0;
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        worst = std::max(worst, std::abs(v[i].imag()));
        out[i] = cplx(G.value(v[i].real()), 0.0);
    }
    if (max_imag) *max_imag = worst;
    return SampledField::from_values(f.grid(), std::move(out));
}

std::vector<double> modulus_integral(const SampledField& f, int k, double mu_exp) {
    if (!(mu_exp > 0)) throw ParamError("nonlinear: modulus exponent must be positive");
    const GridSpec& g = f.grid();
    const double radius = std::exp2(-k);
    if (radius < g.spacing())
        throw ResolutionError("nonlinear: ball radius 2^{-k} below the grid spacing");
    if (radius > g.halfwidth)
        throw InputError("nonlinear: ball radius 2^{-k} exceeds the domain halfwidth");

    const int N = g.points_per_axis;
    const double h = g.spacing();
    const int reach = static_cast<int>(std::floor(radius / h));
    const auto& v = f.values();
    std::vector<double> out(g.size(), 0.0);

    if (g.dim == 1) {
        parallel_for(g.size(), [&](std::size_t i) {
            double acc = 0.0;
            const int ii = static_cast<int>(i);
            for (int dz = -reach; dz <= reach; ++dz) {
                // cell-center membership |z| <= radius
                if (std::abs(dz) * h > radius) continue;
                const int jj = ((ii + dz) % N + N) % N;
                acc += std::pow(std::abs(v[jj] - v[i]), mu_exp);
            }
            out[i] = acc * h;
        });
    } else {
        parallel_for(g.size(), [&](std::size_t i) {
            const int ix = static_cast<int>(i % static_cast<std::size_t>(N));
            const int iy = static_cast<int>(i / static_cast<std::size_t>(N));
            double acc = 0.0;
            for (int dy = -reach; dy <= reach; ++dy) {
                const int jy = ((iy + dy) % N + N) % N;
                for (int dx = -reach; dx <= reach; ++dx) {
                    if (std::hypot(dx * h, dy * h) > radius) continue;
                    const int jx = ((ix + dx) % N + N) % N;
                    acc += std::pow(
                        std::abs(v[static_cast<std::size_t>(jy) * N + jx] - v[i]),
                        mu_exp);
                }
            }
            out[i] = acc * h * h;
        });
    }
    return out;
}

// --- paraproduct ----------------------------------------------------------

int paraproduct_separation(int m) {
    if (m < 2) throw InputError("nonlinear: paraproduct needs at least two factors");
    return static_cast<int>(std::ceil(1.0 + std::log2(3.0 * (m - 1)))) + 1;
}

Paraproduct paraproduct_split(const std::vector<SampledField>& factors,
                              const DyadicSystem& sys) {
    const int m = static_cast<int>(factors.size());
    const int N = paraproduct_separation(m);  // validates m >= 2
    for (const auto& f : factors)
        if (!(f.grid() == sys.grid))
            throw CompositionError("nonlinear: factor grid differs from dyadic system");

    const std::size_t n = sys.grid.size();
    const int levels = sys.levels();

    // Level blocks Delta_j f_i and running low-pass sums Q_j f_i (values).
    std::vector<std::vector<std::vector<cplx>>> delta(m), lowpass(m);
    for (int i = 0; i < m; ++i) {
        delta[i].resize(levels);
        lowpass[i].resize(levels);
        std::vector<cplx> run(n, cplx(0.0));
        for (int j = 0; j < levels; ++j) {
            const SampledField bj = lp_block(factors[i], sys, j);
            delta[i][j] = bj.values();
            for (std::size_t x = 0; x < n; ++x) run[x] += delta[i][j][x];
            lowpass[i][j] = run;
        }
    }

    Paraproduct out;
    out.separation = N;

    // High-low terms: factor k at level j >= N, the rest low-passed to j-N.
    for (int k = 0; k < m; ++k) {
        std::vector<cplx> acc(n, cplx(0.0));
        for (int j = N; j < levels; ++j) {
            std::vector<cplx> term = delta[k][j];
            for (int i = 0; i < m; ++i) {
                if (i == k) continue;
                const auto& q = lowpass[i][j - N];
                for (std::size_t x = 0; x < n; ++x) term[x] *= q[x];
            }
            for (std::size_t x = 0; x < n; ++x) acc[x] += term[x];
        }
        out.highlow.push_back(SampledField::from_values(sys.grid, std::move(acc)));
    }

    // Diagonal part: every level tuple not captured above, i.e. tuples whose
    // maximum is < N or whose runner-up comes within N of the maximum.
    std::vector<cplx> diag(n, cplx(0.0));
    std::vector<int> tuple(m, 0);
    std::vector<cplx> prod(n);
    auto covered = [&](const std::vector<int>& t) {
        int arg = 0;
        for (int i = 1; i < m; ++i)
            if (t[i] > t[arg]) arg = i;
        if (t[arg] < N) return false;
        for (int i = 0; i < m; ++i)
            if (i != arg && t[i] > t[arg] - N) return false;
        return true;
    };
    for (;;) {
        if (!covered(tuple)) {
            prod = delta[0][tuple[0]];
            for (int i = 1; i < m; ++i) {
                const auto& d = delta[i][tuple[i]];
                for (std::size_t x = 0; x < n; ++x) prod[x] *= d[x];
            }
            for (std::size_t x = 0; x < n; ++x) diag[x] += prod[x];
        }
        int pos = m - 1;
        while (pos >= 0 && tuple[pos] == levels - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        ++tuple[pos];
    }
    out.diagonal = SampledField::from_values(sys.grid, std::move(diag));
    return out;
}

}  // namespace herzlab
