#pragma once

#include <cmath>

#include "mixlab/vec2.hpp"

namespace mixlab {

/// A point z = (rho, v, m) of the five-dimensional relaxed state space.
///
/// rho is the dimensionless density deviation, v = 2u + (0, rho) the
/// transformed velocity and m the relaxed mass flux. The physical velocity
/// is recovered as u = (v - (0, rho)) / 2.
struct StateZ {
    double rho = 0.0;
    Vec2 v;
    Vec2 m;

    StateZ() = default;
    StateZ(double rho_, Vec2 v_, Vec2 m_) : rho(rho_), v(v_), m(m_) {}

    StateZ operator+(const StateZ& o) const { return {rho + o.rho, v + o.v, m + o.m}; }
    StateZ operator-(const StateZ& o) const { return {rho - o.rho, v - o.v, m - o.m}; }
    StateZ operator*(double s) const { return {rho * s, v * s, m * s}; }
    StateZ& operator+=(const StateZ& o) {
        rho += o.rho;
        v += o.v;
        m += o.m;
        return *this;
    }

    double norm() const { return std::sqrt(rho * rho + v.norm2() + m.norm2()); }

    Vec2 velocity_u() const { return {v.x / 2.0, (v.y - rho) / 2.0}; }

    bool finite() const {
        return std::isfinite(rho) && std::isfinite(v.x) && std::isfinite(v.y) &&
               std::isfinite(m.x) && std::isfinite(m.y);
    }
};

inline StateZ operator*(double s, const StateZ& z) { return z * s; }

/// Parameters of the compact relaxed constraint set: the velocity bound M > 1
/// and an interior safety margin used by the segment search.
struct HullParams {
    double M = 5.0;
    double margin_delta = 0.0;
};

} // namespace mixlab
