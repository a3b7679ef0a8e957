#pragma once

#include "mixlab/vec2.hpp"

namespace mixlab {

struct Box2 {
    Vec2 lo;
    Vec2 hi;

    double width() const { return hi.x - lo.x; }
    double height() const { return hi.y - lo.y; }
    double area() const { return width() * height(); }
    bool contains(const Vec2& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
    }
};

/// Space-time window: a spatial box times a time interval.
struct SpaceTimeWindow {
    Box2 space;
    double t0 = 0.0;
    double t1 = 0.0;

    double duration() const { return t1 - t0; }
};

} // namespace mixlab
