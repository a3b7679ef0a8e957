#include "mixlab/hull.hpp"

#include <algorithm>
#include <cmath>

namespace mixlab {

bool in_constraint_set(const StateZ& z, const HullParams& params) {
    constexpr double tol = 1e-12;
    if (!z.finite()) return false;
    if (std::abs(std::abs(z.rho) - 1.0) > tol) return false;
    if ((z.m - 0.5 * z.rho * z.v).norm() > tol) return false;
    return z.v.norm() <= params.M + tol;
}

HullClassification hull_contains(const StateZ& z, const HullParams& params) {
    const double M = params.M;
    const double rho = z.rho;
    const double one_minus_rho2 = 1.0 - rho * rho;

    HullClassification r;
    r.slacks[0] = 1.0 - std::abs(rho);
    r.slacks[1] = 0.5 * one_minus_rho2 - (z.m - 0.5 * rho * z.v).norm();
    // (3) kept in linear units: |v| <= sqrt(M^2 - (1 - rho^2)).
    const double v_cap2 = M * M - one_minus_rho2;
    r.slacks[2] = (v_cap2 >= 0.0) ? std::sqrt(v_cap2) - z.v.norm() : -z.v.norm() - std::sqrt(-v_cap2);
    r.slacks[3] = 0.5 * M * (1.0 - rho) - (z.m - 0.5 * z.v).norm();
    r.slacks[4] = 0.5 * M * (1.0 + rho) - (z.m + 0.5 * z.v).norm();

    r.min_slack = *std::min_element(r.slacks.begin(), r.slacks.end());

    const double tol = 1e-12 * (1.0 + z.norm() + M);
    if (r.min_slack > tol)
        r.position = HullPosition::inside_strict;
    else if (r.min_slack >= -tol)
        r.position = HullPosition::boundary;
    else
        r.position = HullPosition::outside;
    return r;
}

double gauge_D(const StateZ& z) { return std::max(0.0, 1.0 - z.rho * z.rho); }

double gauge_D_raw(const StateZ& z) { return 1.0 - z.rho * z.rho; }

StateZ gauge_G(const StateZ& z) { return {-2.0 * z.rho, {0.0, 0.0}, {0.0, 0.0}}; }

double gauge_H(const StateZ& w) { return w.rho * w.rho; }

bool in_wave_cone(const StateZ& zbar, double tol) {
    return std::abs(std::abs(zbar.rho) - zbar.v.norm()) <= tol * (1.0 + zbar.norm());
}

} // namespace mixlab
