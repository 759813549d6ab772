/**
 * @file field.h
 * @brief Complex sampled fields on the periodic grid and their discrete
 *        Fourier representation.
 *
 * The transform pair is normalized symmetrically so that the spectrum
 * approximates the continuum Fourier transform with the (2*pi)^{-n/2}
 * convention:
 *
 *   spectrum[k] = (2*pi)^{-n/2} * h^n     * sum_i values[i]   * e^{-i x_i.xi_k}
 *   values[i]   = (2*pi)^{-n/2} * (pi/X)^n * sum_k spectrum[k] * e^{+i x_i.xi_k}
 *
 * With this convention the round trip is exact (up to rounding) and the
 * discrete Parseval identity holds:
 *
 *   sum_i |values[i]|^2 * h^n  =  sum_k |spectrum[k]|^2 * (pi/X)^n.
 *
 * Fields are immutable: every operation returns a new field.  A field may
 * carry either or both representations; accessing a missing one raises
 * StateError, and to_spectrum / to_physical produce a field with the
 * requested side materialized.
 */
#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "herzlab/grid.h"

namespace herzlab {

using cplx = std::complex<double>;

class SampledField {
  public:
    /// An empty field (no grid, no data); accessors raise StateError.
    SampledField() = default;

    /// Builds a field from physical samples (flattened, size grid.size()).
    /// Throws ParamError on grid validation failure, InputError on size
    /// mismatch or non-finite samples.
    static SampledField from_values(const GridSpec& grid, std::vector<cplx> values);

    /// Builds a field from spectral coefficients (DFT bin layout).
    static SampledField from_spectrum(const GridSpec& grid, std::vector<cplx> spectrum);

    const GridSpec& grid() const { return grid_; }
    bool has_values() const { return !values_.empty(); }
    bool has_spectrum() const { return !spectrum_.empty(); }

    /// Physical samples; StateError if this field only holds a spectrum.
    const std::vector<cplx>& values() const&;
    /// Spectral coefficients; StateError if this field only holds samples.
    const std::vector<cplx>& spectrum() const&;

    // Calling the accessors on a temporary (e.g. to_spectrum(f).spectrum())
    // would hand out a reference into a destroyed object.
    const std::vector<cplx>& values() const&& = delete;
    const std::vector<cplx>& spectrum() const&& = delete;

  private:
    GridSpec grid_;
    std::vector<cplx> values_;
    std::vector<cplx> spectrum_;
    friend SampledField to_spectrum(const SampledField&);
    friend SampledField to_physical(const SampledField&);
};

/// Returns a field that additionally carries its spectrum (no-op if present).
SampledField to_spectrum(const SampledField& f);

/// Returns a field that additionally carries physical values; StateError if
/// the input has no spectrum to invert.
SampledField to_physical(const SampledField& f);

/// Pointwise frequency-space multiplication by a real table indexed by
/// spectral bin (size grid.size()).  Result carries both representations.
SampledField apply_multiplier(const SampledField& f, std::span<const double> multiplier);

/// Convenience: multiplier given as a radial profile m(|xi|).
SampledField apply_radial_multiplier(const SampledField& f,
                                     const std::function<double(double)>& profile);

/// Builds the bin table of a radial profile on a grid.
std::vector<double> radial_multiplier_table(const GridSpec& g,
                                            const std::function<double(double)>& profile);

// --- small field algebra (pointwise, physical side) ----------------------

SampledField field_add(const SampledField& a, const SampledField& b);
SampledField field_sub(const SampledField& a, const SampledField& b);
SampledField field_scale(const SampledField& a, double c);

/// Grid-weighted L^p norm of the samples, p in (0, inf); p = kInf gives the
/// sup norm.
double field_lp_norm(const SampledField& f, double p);

/// Relative L^2 distance ||a-b||_2 / ||b||_2 (0/0 -> 0).
double rel_l2_error(const SampledField& a, const SampledField& b);

namespace detail {
/// Unnormalized-layout transforms with full herzlab normalization applied.
/// `in` and `out` have grid.size() entries and may alias.
void dft_forward(const GridSpec& g, const cplx* in, cplx* out);
void dft_backward(const GridSpec& g, const cplx* in, cplx* out);
}  // namespace detail

}  // namespace herzlab
