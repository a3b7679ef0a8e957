#include "mixlab/segment.hpp"

#include <algorithm>
#include <cmath>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

constexpr double kDegenerateFloor = 1e-10;
constexpr double kTiny = 1e-14;

// Both endpoints z +- lambda d strictly inside with slack >= delta.
bool endpoints_admissible(const StateZ& z, const StateZ& d, double lambda, double delta,
                          const HullParams& params) {
    const HullClassification plus = hull_contains(z + lambda * d, params);
    if (!plus.strictly_inside() || plus.min_slack < delta) return false;
    const HullClassification minus = hull_contains(z - lambda * d, params);
    return minus.strictly_inside() && minus.min_slack >= delta;
}

double bisect_lambda(const StateZ& z, const StateZ& d, double delta, const HullParams& params) {
    // One endpoint reaches |rho| = 1 at 1 - |rho_z|, so the predicate is
    // false there and the bracket is valid.
    double lo = 0.0;
    double hi = 1.0 - std::abs(z.rho);
    if (endpoints_admissible(z, d, hi, delta, params)) return hi;
    for (int it = 0; it < 100 && (hi - lo) > 1e-10 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (endpoints_admissible(z, d, mid, delta, params))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Chooses e on the unit circle minimizing |e - omega| subject to
// A <= v.e <= B, written as a feasible arc in the angle from v-hat.
Vec2 select_direction_on_arc(const Vec2& v, double A, double B, const Vec2& omega) {
    const double vn = v.norm();
    if (vn < kTiny) {
        // All of S^1 is admissible (A < 0 < B strictly inside).
        if (omega.norm() < kTiny) return {1.0, 0.0};
        return omega * (1.0 / omega.norm());
    }
    double c_lo = A / vn;
    double c_hi = B / vn;
    if (c_lo > 1.0 + 1e-12 || c_hi < -1.0 - 1e-12)
        throw EmptyTheta("admissible direction arc is empty");
    c_lo = std::clamp(c_lo, -1.0, 1.0);
    c_hi = std::clamp(c_hi, -1.0, 1.0);

    if (c_lo <= -1.0 + 1e-15 && c_hi >= 1.0 - 1e-15) {
        // Unconstrained.
        if (omega.norm() < kTiny) return {1.0, 0.0};
        return omega * (1.0 / omega.norm());
    }

    const Vec2 vhat = v * (1.0 / vn);
    const Vec2 vperp = vhat.perp();
    const double p = omega.dot(vhat);
    const double q = omega.dot(vperp);

    // Feasible angles: theta in [theta_min, theta_max] on either side of v.
    const double theta_min = std::acos(c_hi);
    const double theta_max = std::acos(c_lo);
    // Mirror symmetry: solve on the q >= 0 side.
    const double target = std::atan2(std::abs(q), p); // in [0, pi]
    const double theta = std::clamp(target, theta_min, theta_max);
    const double sign = (q >= 0.0) ? 1.0 : -1.0;
    return std::cos(theta) * vhat + sign * std::sin(theta) * vperp;
}

} // namespace

SegmentResult lambda_segment(const StateZ& z, const HullParams& params) {
    const double one_minus_rho2 = 1.0 - z.rho * z.rho;
    if (one_minus_rho2 < kDegenerateFloor)
        throw DegenerateState("1 - rho^2 below degeneracy floor; state treated as converged");

    const HullClassification cls = hull_contains(z, params);
    if (!cls.strictly_inside() || cls.min_slack < params.margin_delta)
        throw SegmentFailure("state not strictly interior with the required margin");

    const double M = params.M;
    const double rho = z.rho;
    const Vec2 omega = 2.0 / one_minus_rho2 * (z.m - 0.5 * rho * z.v);
    const Vec2 omega_p = 2.0 / (M * (1.0 + rho)) * (z.m + 0.5 * z.v);
    const Vec2 omega_m = 2.0 / (M * (1.0 - rho)) * (z.m - 0.5 * z.v);

    const double vn = z.v.norm();
    const bool small_v = vn < std::abs(rho);

    Vec2 e;
    if (small_v) {
        e = (omega.norm() < kTiny) ? Vec2{1.0, 0.0} : omega * (1.0 / omega.norm());
    } else {
        // Admissible arc from the two one-sided velocity-bound conditions.
        const double R = M * M - vn * vn - one_minus_rho2;
        const double A = rho - R / (2.0 * (1.0 + rho));
        const double B = rho + R / (2.0 * (1.0 - rho));
        e = select_direction_on_arc(z.v, A, B, omega);
    }

    const double wn = omega.norm();
    const double wp = omega_p.norm();
    const double wm = omega_m.norm();

    const Vec2 mbar0 = 0.5 * (z.v + rho * e) - rho * omega;
    const Vec2 mbar_p = -0.5 * e + (M / 2.0) * omega_p;
    const Vec2 mbar_m = 0.5 * e - (M / 2.0) * omega_m;

    SegmentResult best;
    const double tie_tol = 1e-12 * (1.0 + wn + wp + wm);

    auto evaluate = [&](const Vec2& mbar, SegmentCase tag) {
        StateZ d{1.0, e, mbar};
        const double lam = bisect_lambda(z, d, params.margin_delta, params);
        if (lam > best.lambda_max) {
            best.direction = d;
            best.lambda_max = lam;
            best.case_tag = tag;
        }
    };

    if (wn >= std::max(wp, wm) - tie_tol) {
        evaluate(mbar0, SegmentCase::omega_dominant);
    } else if (std::abs(wp - wm) <= tie_tol) {
        // Exact tie between the two signs: keep the longer segment.
        evaluate(mbar_p, SegmentCase::omega_plus_dominant);
        evaluate(mbar_m, SegmentCase::omega_minus_dominant);
    } else if (wp > wm) {
        evaluate(mbar_p, SegmentCase::omega_plus_dominant);
    } else {
        evaluate(mbar_m, SegmentCase::omega_minus_dominant);
    }
    if (small_v) best.case_tag = SegmentCase::small_v;

    const HullClassification plus = hull_contains(z + best.lambda_max * best.direction, params);
    const HullClassification minus = hull_contains(z - best.lambda_max * best.direction, params);
    best.margin = std::min(plus.min_slack, minus.min_slack);
    return best;
}

} // namespace mixlab
