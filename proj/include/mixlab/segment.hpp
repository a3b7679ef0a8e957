#pragma once

#include "mixlab/hull.hpp"
#include "mixlab/state.hpp"

namespace mixlab {

enum class SegmentCase {
    omega_dominant,
    omega_plus_dominant,
    omega_minus_dominant,
    small_v,
};

/// A maximal admissible oscillation segment [z - lambda_max d, z + lambda_max d]
/// in a wave-cone direction d = (1, e, mbar) with unit density component.
struct SegmentResult {
    StateZ direction;        // unit-rho cone direction (1, e, mbar)
    double lambda_max = 0.0; // half-length of the admissible segment
    double margin = 0.0;     // worst endpoint slack achieved at lambda_max
    SegmentCase case_tag = SegmentCase::omega_dominant;
};

/// Extracts a sizeable oscillation direction at a strictly interior state.
///
/// The direction is built from the relative-error points
///   omega   = 2 (m - rho v / 2) / (1 - rho^2),
///   omega_p = 2 (m + v/2) / (M (1 + rho)),
///   omega_m = 2 (m - v/2) / (M (1 - rho)),
/// choosing e on the unit circle nearest to omega subject to the admissible
/// arc (active only when |v| >= |rho|), and mbar from whichever relative
/// error dominates. The half-length is found by bisection against the exact
/// hull classification, requiring slack >= params.margin_delta at both
/// endpoints (relative tolerance 1e-10, at most 100 iterations).
///
/// Throws DegenerateState when 1 - rho^2 < 1e-10, SegmentFailure when the
/// state is not strictly interior with the required margin.
SegmentResult lambda_segment(const StateZ& z, const HullParams& params);

} // namespace mixlab
