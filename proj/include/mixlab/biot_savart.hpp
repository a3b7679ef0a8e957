#pragma once

#include <vector>

#include "mixlab/box.hpp"

namespace mixlab {

/// Velocity grids returned by the spectral solve, node-centered on the same
/// (n1) x (n2 + 1) layout as the input density (periodic in x1, Dirichlet
/// stream function at the x2 edges via odd extension).
struct BiotSavartResult {
    int n1 = 0; // periodic samples in x1
    int n2 = 0; // cells in x2 (n2 + 1 node rows)
    Box2 box;
    std::vector<double> u1; // row-major: [j * n1 + i]
    std::vector<double> u2;
    double spectral_divergence = 0.0; // max |ik . u_hat| over modes

    double at_u1(int i, int j) const { return u1[static_cast<std::size_t>(j) * n1 + i]; }
    double at_u2(int i, int j) const { return u2[static_cast<std::size_t>(j) * n1 + i]; }
};

/// Solves u = grad-perp of the inverse Laplacian of (-d1 rho) on a strip
/// periodic in x1. The vorticity is differentiated spectrally, extended
/// oddly across the x2 edges (doubled domain) and inverted by FFT, so the
/// returned field is divergence-free to spectral accuracy.
///
/// rho is row-major [j * n1 + i], j = 0..n2 inclusive. Throws NonNeutralData
/// if the x1 zero mode of the computed vorticity exceeds 1e-10.
BiotSavartResult biot_savart_velocity(const std::vector<double>& rho, int n1, int n2,
                                      const Box2& box);

} // namespace mixlab
