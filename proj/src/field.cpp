/**
 * @file field.cpp
 * @brief Grid geometry, FFTW-backed transforms, field algebra.
 */
#include "herzlab/field.h"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "herzlab/util.h"

namespace herzlab {

// --- GridSpec -------------------------------------------------------------

void GridSpec::validate() const {
    if (dim != 1 && dim != 2)
        throw ParamError("grid: dim must be 1 or 2");
    if (!(halfwidth > 0) || !std::isfinite(halfwidth))
        throw ParamError("grid: halfwidth must be positive and finite");
    const int N = points_per_axis;
    if (N < 16 || (N & (N - 1)) != 0)
        throw ParamError("grid: points_per_axis must be a power of two >= 16");
}

double GridSpec::nyquist() const {
    return M_PI * points_per_axis / (2.0 * halfwidth);
}

std::size_t GridSpec::size() const {
    const std::size_t N = static_cast<std::size_t>(points_per_axis);
    return dim == 1 ? N : N * N;
}

double GridSpec::cell_measure() const {
    return dim == 1 ? spacing() : spacing() * spacing();
}

double GridSpec::freq_cell_measure() const {
    const double d = M_PI / halfwidth;
    return dim == 1 ? d : d * d;
}

std::array<double, 2> GridSpec::point(std::size_t idx) const {
    const int N = points_per_axis;
    const double h = spacing();
    if (dim == 1) return {-halfwidth + h * static_cast<double>(idx), 0.0};
    const int ix = static_cast<int>(idx % static_cast<std::size_t>(N));
    const int iy = static_cast<int>(idx / static_cast<std::size_t>(N));
    return {-halfwidth + h * ix, -halfwidth + h * iy};
}

double GridSpec::radius(std::size_t idx) const {
    const auto p = point(idx);
    return dim == 1 ? std::abs(p[0]) : std::hypot(p[0], p[1]);
}

std::array<double, 2> GridSpec::freq(std::size_t idx) const {
    const int N = points_per_axis;
    const double d = M_PI / halfwidth;
    if (dim == 1) return {d * signed_mode(static_cast<int>(idx)), 0.0};
    const int kx = static_cast<int>(idx % static_cast<std::size_t>(N));
    const int ky = static_cast<int>(idx / static_cast<std::size_t>(N));
    return {d * signed_mode(kx), d * signed_mode(ky)};
}

double GridSpec::freq_radius(std::size_t idx) const {
    const auto f = freq(idx);
    return dim == 1 ? std::abs(f[0]) : std::hypot(f[0], f[1]);
}

std::size_t GridSpec::flat(int ix, int iy) const {
    const int N = points_per_axis;
    auto wrap = [N](int i) { return ((i % N) + N) % N; };
    if (dim == 1) return static_cast<std::size_t>(wrap(ix));
    return static_cast<std::size_t>(wrap(iy)) * N + wrap(ix);
}

double periodic_axis_distance(const GridSpec& g, int i, int j) {
    const int N = g.points_per_axis;
    int d = std::abs(i - j) % N;
    d = std::min(d, N - d);
    return d * g.spacing();
}

// --- FFT backend ----------------------------------------------------------

namespace {

// Plan cache keyed by (dim, N, sign); plans are created with FFTW_UNALIGNED
// so they may be executed on any caller buffer via fftw_execute_dft.  The
// FFTW planner is not thread-safe, hence the mutex.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache c;
        return c;
    }

    void execute(const GridSpec& g, int sign, const cplx* in, cplx* out) {
        // New-array execution must preserve the plan's in-placeness: an
        // in-place plan run on distinct arrays silently corrupts the output
        // for some sizes (1d N >= 65536 with this FFTW build).  Plans here
        // are out-of-place, so an in-place request bounces through a copy.
        if (in == out) {
            std::vector<cplx> tmp(in, in + g.size());
            execute(g, sign, tmp.data(), out);
            return;
        }
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(mu_);
            const Key key{g.dim, g.points_per_axis, sign};
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                // Distinct throwaway buffers define an out-of-place plan;
                // FFTW_UNALIGNED makes it valid for any alignment later.
                std::vector<cplx> ta(g.size()), tb(g.size());
                auto* pa = reinterpret_cast<fftw_complex*>(ta.data());
                auto* pb = reinterpret_cast<fftw_complex*>(tb.data());
                fftw_plan created =
                    g.dim == 1
                        ? fftw_plan_dft_1d(g.points_per_axis, pa, pb, sign,
                                           FFTW_ESTIMATE | FFTW_UNALIGNED)
                        : fftw_plan_dft_2d(g.points_per_axis, g.points_per_axis, pa, pb,
                                           sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (!created) throw Error("field: FFTW planning failed");
                it = plans_.emplace(key, created).first;
            }
            plan = it->second;
        }
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

  private:
    using Key = std::tuple<int, int, int>;
    std::map<Key, fftw_plan> plans_;
    std::mutex mu_;
};

// (-1)^{sum of per-axis bin indices}: absorbs the x_0 = -X origin phase so
// spectrum bins line up with the continuum transform at xi = (pi/X) k'.
inline double origin_phase(const GridSpec& g, std::size_t idx) {
    const int N = g.points_per_axis;
    int s;
    if (g.dim == 1) {
        s = static_cast<int>(idx);
    } else {
        s = static_cast<int>(idx % static_cast<std::size_t>(N)) +
            static_cast<int>(idx / static_cast<std::size_t>(N));
    }
    return (s & 1) ? -1.0 : 1.0;
}

}  // namespace

namespace detail {

void dft_forward(const GridSpec& g, const cplx* in, cplx* out) {
    PlanCache::instance().execute(g, FFTW_FORWARD, in, out);
    const double scale =
        std::pow(2.0 * M_PI, -0.5 * g.dim) * g.cell_measure();
    const std::size_t n = g.size();
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale * origin_phase(g, k);
}

void dft_backward(const GridSpec& g, const cplx* in, cplx* out) {
    const std::size_t n = g.size();
    std::vector<cplx> phased(n);
    for (std::size_t k = 0; k < n; ++k) phased[k] = in[k] * origin_phase(g, k);
    PlanCache::instance().execute(g, FFTW_BACKWARD, phased.data(), out);
    const double scale =
        std::pow(2.0 * M_PI, -0.5 * g.dim) * g.freq_cell_measure();
    for (std::size_t k = 0; k < n; ++k) out[k] *= scale;
}

}  // namespace detail

// --- SampledField ---------------------------------------------------------

namespace {
void check_samples(const GridSpec& g, const std::vector<cplx>& v, const char* what) {
    if (v.size() != g.size())
        throw InputError(std::string("field: ") + what + " size does not match grid");
    for (const cplx& z : v)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw InputError(std::string("field: non-finite ") + what);
}
}  // namespace

SampledField SampledField::from_values(const GridSpec& grid, std::vector<cplx> values) {
    grid.validate();
    check_samples(grid, values, "values");
    SampledField f;
    f.grid_ = grid;
    f.values_ = std::move(values);
    return f;
}

SampledField SampledField::from_spectrum(const GridSpec& grid, std::vector<cplx> spectrum) {
    grid.validate();
    check_samples(grid, spectrum, "spectrum");
    SampledField f;
    f.grid_ = grid;
    f.spectrum_ = std::move(spectrum);
    return f;
}

const std::vector<cplx>& SampledField::values() const& {
    if (values_.empty()) throw StateError("field: physical values not present");
    return values_;
}

const std::vector<cplx>& SampledField::spectrum() const& {
    if (spectrum_.empty()) throw StateError("field: spectrum not present");
    return spectrum_;
}

SampledField to_spectrum(const SampledField& f) {
    if (f.has_spectrum()) return f;
    SampledField out = f;
    out.spectrum_.resize(f.grid().size());
    detail::dft_forward(f.grid(), f.values().data(), out.spectrum_.data());
    return out;
}

SampledField to_physical(const SampledField& f) {
    if (f.has_values()) return f;
    if (!f.has_spectrum())
        throw StateError("field: to_physical requires a spectrum");
    SampledField out = f;
    out.values_.resize(f.grid().size());
    detail::dft_backward(f.grid(), f.spectrum().data(), out.values_.data());
    return out;
}

SampledField apply_multiplier(const SampledField& f, std::span<const double> multiplier) {
    if (multiplier.size() != f.grid().size())
        throw InputError("field: multiplier size does not match grid");
    SampledField withspec = to_spectrum(f);
    std::vector<cplx> spec = withspec.spectrum();
    for (std::size_t k = 0; k < spec.size(); ++k) spec[k] *= multiplier[k];
    return to_physical(SampledField::from_spectrum(f.grid(), std::move(spec)));
}

std::vector<double> radial_multiplier_table(const GridSpec& g,
                                            const std::function<double(double)>& profile) {
    std::vector<double> m(g.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = profile(g.freq_radius(k));
    return m;
}

SampledField apply_radial_multiplier(const SampledField& f,
                                     const std::function<double(double)>& profile) {
    return apply_multiplier(f, radial_multiplier_table(f.grid(), profile));
}

// --- algebra --------------------------------------------------------------

namespace {
void require_same_grid(const SampledField& a, const SampledField& b) {
    if (!(a.grid() == b.grid()))
        throw CompositionError("field: operands live on different grids");
}
}  // namespace

SampledField field_add(const SampledField& a, const SampledField& b) {
    require_same_grid(a, b);
    std::vector<cplx> v = a.values();
    const auto& w = b.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
    return SampledField::from_values(a.grid(), std::move(v));
}

SampledField field_sub(const SampledField& a, const SampledField& b) {
    require_same_grid(a, b);
    std::vector<cplx> v = a.values();
    const auto& w = b.values();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= w[i];
    return SampledField::from_values(a.grid(), std::move(v));
}

SampledField field_scale(const SampledField& a, double c) {
    std::vector<cplx> v = a.values();
    for (auto& z : v) z *= c;
    return SampledField::from_values(a.grid(), std::move(v));
}

double field_lp_norm(const SampledField& f, double p) {
    const auto& v = f.values();
    if (is_inf(p)) {
        double m = 0.0;
        for (const cplx& z : v) m = std::max(m, std::abs(z));
        return m;
    }
    if (!(p > 0)) throw ParamError("field: L^p norm needs p > 0");
    double acc = 0.0;
    for (const cplx& z : v) acc += std::pow(std::abs(z), p);
    return std::pow(acc * f.grid().cell_measure(), 1.0 / p);
}

double rel_l2_error(const SampledField& a, const SampledField& b) {
    require_same_grid(a, b);
    const auto& va = a.values();
    const auto& vb = b.values();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        num += std::norm(va[i] - vb[i]);
        den += std::norm(vb[i]);
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : kInf;
    return std::sqrt(num / den);
}

}  // namespace herzlab
