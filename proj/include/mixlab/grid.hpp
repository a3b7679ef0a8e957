#pragma once

#include <cstdint>
#include <vector>

#include "mixlab/box.hpp"

namespace mixlab {

/// One cube of the parity-shifted space-time grid: spatial square of side s
/// centered at s * (zx, zy), time interval of length s centered at
/// s * (ti + parity / 2), with parity = (zx + zy) mod 2.
struct GridCube {
    int zx = 0;
    int zy = 0;
    int ti = 0;
    int parity = 0;
};

struct ShiftedGrid {
    double s = 0.0;
    SpaceTimeWindow window;
    std::vector<GridCube> cubes; // sorted by (zx, zy, ti)

    Vec2 cube_center(const GridCube& c) const { return {s * c.zx, s * c.zy}; }
    double cube_t_center(const GridCube& c) const { return s * (c.ti + 0.5 * c.parity); }

    Box2 cube_space(const GridCube& c) const {
        const Vec2 ctr = cube_center(c);
        return {{ctr.x - 0.5 * s, ctr.y - 0.5 * s}, {ctr.x + 0.5 * s, ctr.y + 0.5 * s}};
    }
    /// Inner cube: concentric, side 3/4 s (space and time).
    Box2 cube_inner_space(const GridCube& c) const {
        const Vec2 ctr = cube_center(c);
        return {{ctr.x - 0.375 * s, ctr.y - 0.375 * s}, {ctr.x + 0.375 * s, ctr.y + 0.375 * s}};
    }

    static int parity_of(int zx, int zy) { return ((zx + zy) % 2 + 2) % 2; }
};

} // namespace mixlab
