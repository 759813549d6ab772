/**
 * @file lpdecomp.h
 * @brief Smooth dyadic (Littlewood–Paley) decomposition on the grid.
 *
 * The level multipliers are built from a fixed radial cutoff profile psi with
 * psi = 1 on [0, 1], psi = 0 on [3/2, inf), 0 <= psi <= 1:
 *
 *   m_0(xi)  = psi(|xi|)
 *   m_j(xi)  = psi(2^{-j}|xi|) - psi(2^{1-j}|xi|),   j >= 1
 *
 * so that sum_{j<=J} m_j(xi) = psi(2^{-J}|xi|) = 1 for |xi| <= 2^J, the
 * level-j support is {2^{j-1} <= |xi| <= 3*2^{j-1}}, and only adjacent levels
 * overlap.
 */
#pragma once

#include <vector>

#include "herzlab/field.h"

namespace herzlab {

/// The radial cutoff profile: exactly 1 for r <= 1, exactly 0 for r >= 3/2,
/// smooth and strictly decreasing in between.
double cutoff_profile(double r);

struct DyadicSystem {
    GridSpec grid;
    int j_max = 0;  ///< levels 0..j_max inclusive
    /// Per-level real multiplier tables, indexed [level][spectral bin].
    std::vector<std::vector<double>> multipliers;

    int levels() const { return j_max + 1; }
};

/// Largest level count the grid resolves comfortably:
/// j_max = floor(log2(Nyquist)) - 1, which keeps every level's support
/// inside the resolved band (3*2^{j_max-1} < Nyquist).
int default_j_max(const GridSpec& g);

/// Builds the dyadic system.  j_max < 0 selects the default; a requested
/// 2^{j_max} beyond the Nyquist frequency raises ResolutionError.
DyadicSystem build_dyadic_system(const GridSpec& g, int j_max = -1);

/// Level-j band projection phi_j * f (frequency-space multiplication).
/// InputError for j outside [0, j_max].
SampledField lp_block(const SampledField& f, const DyadicSystem& sys, int j);

struct PeetreParams {
    double a = 2.0;  ///< decay exponent of the normalizing weight
};

/// Discrete Peetre maximal function of the level-j block:
///   sup over grid points y of |phi_j*f(y)| / (1 + 2^j d(x,y))^a
/// with d the periodic (torus) distance.  Returns one value per grid point.
std::vector<double> peetre_maximal(const SampledField& f, const DyadicSystem& sys,
                                   int j, const PeetreParams& pp);

}  // namespace herzlab
