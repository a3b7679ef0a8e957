#pragma once

#include <array>
#include <utility>

#include "mixlab/state.hpp"

namespace mixlab {

// Centered 2nd-order finite-difference residuals of the three divergence
// rows of the relaxed system at one point:
//   row 0:  d1 v1 + d2 (v2 - rho)          (divergence of the velocity map)
//   row 1:  d1 (v2 + rho) - d2 v1          (curl row of the stationary pair)
//   row 2:  dt rho + d1 m1 + d2 m2         (mass conservation)
template <class F>
std::array<double, 3> linear_rows_fd(F&& field, const Vec2& x, double t, double h) {
    const StateZ xp = field(Vec2{x.x + h, x.y}, t);
    const StateZ xm = field(Vec2{x.x - h, x.y}, t);
    const StateZ yp = field(Vec2{x.x, x.y + h}, t);
    const StateZ ym = field(Vec2{x.x, x.y - h}, t);
    const StateZ tp = field(x, t + h);
    const StateZ tm = field(x, t - h);
    const double inv = 1.0 / (2.0 * h);

    const double r0 = (xp.v.x - xm.v.x) * inv + ((yp.v.y - yp.rho) - (ym.v.y - ym.rho)) * inv;
    const double r1 = ((xp.v.y + xp.rho) - (xm.v.y + xm.rho)) * inv - (yp.v.x - ym.v.x) * inv;
    const double r2 = (tp.rho - tm.rho) * inv + (xp.m.x - xm.m.x) * inv + (yp.m.y - ym.m.y) * inv;
    return {r0, r1, r2};
}

} // namespace mixlab
