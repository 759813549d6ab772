/**
 * @file grid.h
 * @brief Uniform periodic grid on the torus [-X, X)^n, n in {1, 2}.
 *
 * Physical sample points per axis: x_i = -X + i*h with h = 2X/N.
 * Spectral bins per axis use the standard DFT layout: bin index k in [0, N)
 * maps to the signed integer mode k' = k (k < N/2) or k - N (k >= N/2), and
 * to the continuum frequency xi = (pi/X) * k'.  The largest resolved
 * frequency (Nyquist) is pi*N/(2X).
 */
#pragma once

#include <array>
#include <cstddef>

#include "herzlab/errors.h"

namespace herzlab {

struct GridSpec {
    int dim = 1;              ///< 1 or 2
    double halfwidth = 1.0;   ///< X; domain is [-X, X)^dim
    int points_per_axis = 16; ///< N; power of two, >= 16

    /// Throws ParamError unless dim in {1,2}, halfwidth > 0, N a power of
    /// two with N >= 16.
    void validate() const;

    double spacing() const { return 2.0 * halfwidth / points_per_axis; }
    double nyquist() const;
    std::size_t size() const;
    double cell_measure() const;       ///< h^dim
    double freq_cell_measure() const;  ///< (pi/X)^dim

    /// Physical coordinate of the flattened sample index.
    std::array<double, 2> point(std::size_t idx) const;
    /// Euclidean distance of sample idx from the origin.
    double radius(std::size_t idx) const;

    /// Signed integer mode of a per-axis spectral bin.
    int signed_mode(int k) const {
        return k < points_per_axis / 2 ? k : k - points_per_axis;
    }
    /// Continuum frequency vector of the flattened spectral bin.
    std::array<double, 2> freq(std::size_t idx) const;
    /// |xi| of the flattened spectral bin.
    double freq_radius(std::size_t idx) const;

    /// Flattened index from per-axis indices (row-major: idx = iy*N + ix).
    std::size_t flat(int ix, int iy = 0) const;

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && halfwidth == o.halfwidth &&
               points_per_axis == o.points_per_axis;
    }
};

/// Shortest displacement between two per-axis sample indices on the torus,
/// in physical units (always in [0, X]).
double periodic_axis_distance(const GridSpec& g, int i, int j);

}  // namespace herzlab
