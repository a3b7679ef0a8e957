#pragma once

#include <array>

#include "mixlab/state.hpp"

namespace mixlab {

// ============================================================================
// Constraint set and relaxed hull
//
// The exact constraint set is K = { |rho| = 1, m = rho v / 2 } and its
// compact truncation K_M adds |v| <= M. The relaxed set reachable by
// plane-wave segments is cut out by five inequalities:
//
//   (1) |rho| <= 1
//   (2) |m - rho v / 2| <= (1 - rho^2) / 2
//   (3) |v|^2 <= M^2 - (1 - rho^2)
//   (4) |m - v/2| <= (M/2)(1 - rho)
//   (5) |m + v/2| <= (M/2)(1 + rho)
//
// Slacks are reported as right-hand side minus left-hand side, with (3)
// rewritten as sqrt(M^2 - (1 - rho^2)) - |v| so that all five live in
// commensurate linear units of state-space distance.
// ============================================================================

enum class HullPosition { inside_strict, boundary, outside };

struct HullClassification {
    HullPosition position = HullPosition::outside;
    double min_slack = 0.0;          // min of the five slacks
    std::array<double, 5> slacks{};  // in the order listed above

    bool strictly_inside() const { return position == HullPosition::inside_strict; }
};

/// Membership in K_M: |rho| = 1, m = rho v / 2 and |v| <= M (tol 1e-12).
bool in_constraint_set(const StateZ& z, const HullParams& params);

/// Classifies z against the five hull inequalities for K_M.
/// Boundary means |min slack| <= tol; tol scales mildly with |z| and M.
HullClassification hull_contains(const StateZ& z, const HullParams& params);

// --- Semistrongly concave gauge -------------------------------------------
//
// D(z) = 1 - rho^2 measures the distance from the exact density constraint;
// it satisfies the exact expansion D(z + w) = D(z) + G(z).w - H(w) with
// G(z) = -2(rho, 0, 0, 0, 0) and H(w) = rho_w^2 (homogeneous of degree 2).

/// Gauge value, clamped below at zero for states with |rho| > 1.
double gauge_D(const StateZ& z);

/// Unclamped quadratic gauge 1 - rho^2 (the expansion identity is exact
/// for this form).
double gauge_D_raw(const StateZ& z);

/// Gradient factor of the expansion; only the rho slot is nonzero.
StateZ gauge_G(const StateZ& z);

/// Quadratic defect H(w) = rho_w^2.
double gauge_H(const StateZ& w);

// --- Wave cone --------------------------------------------------------------

/// Directions of one-dimensional oscillatory solutions: |rho| = |v|.
/// The test is relative: | |rho| - |v| | <= tol (1 + |z|).
bool in_wave_cone(const StateZ& zbar, double tol = 1e-12);

} // namespace mixlab
