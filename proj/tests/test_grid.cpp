#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/scheme.hpp"

using namespace mixlab;

namespace {

FieldModel flat_field(double c = 1.0) {
    return {SubsolutionField::flat(c, 2.0), HullParams{5.0, 0.0}, Profile::cosine()};
}

// Brute-force oracle: enumerate candidate indices over a generous range and
// apply the containment inequalities directly.
int oracle_count(const SpaceTimeWindow& w, double s, int parity) {
    int count = 0;
    for (int zx = -200; zx <= 200; ++zx) {
        if (s * zx - 0.5 * s < w.space.lo.x - 1e-12 || s * zx + 0.5 * s > w.space.hi.x + 1e-12)
            continue;
        for (int zy = -200; zy <= 200; ++zy) {
            if (s * zy - 0.5 * s < w.space.lo.y - 1e-12 ||
                s * zy + 0.5 * s > w.space.hi.y + 1e-12)
                continue;
            if (ShiftedGrid::parity_of(zx, zy) != parity) continue;
            for (int ti = -200; ti <= 200; ++ti) {
                const double tc = s * (ti + 0.5 * parity);
                if (tc - 0.5 * s < w.t0 - s - 1e-12 || tc + 0.5 * s > w.t1 + s + 1e-12)
                    continue;
                ++count;
            }
        }
    }
    return count;
}

} // namespace

TEST_CASE("oversized side yields an empty grid") {
    const FieldModel field = flat_field();
    const SpaceTimeWindow w{{{-0.4, -0.4}, {0.4, 0.4}}, 0.7, 0.9};
    CHECK_THROWS_AS(build_grid(w, 1.0, field), EmptyGrid);
}

TEST_CASE("cube enumeration matches the combinatorial oracle") {
    const FieldModel field = flat_field();
    // window deep inside the mixing zone so no cube is dropped by the
    // zone or interior filters
    const SpaceTimeWindow w{{{-0.5, -0.5}, {0.5, 0.5}}, 0.8, 1.0};
    const double s = 0.125;
    const ShiftedGrid grid = build_grid(w, s, field);

    int got[2] = {0, 0};
    for (const GridCube& c : grid.cubes) {
        CHECK(c.parity == ShiftedGrid::parity_of(c.zx, c.zy));
        ++got[c.parity];
    }
    for (int parity : {0, 1}) {
        const int expected = oracle_count(w, s, parity);
        CHECK(std::abs(got[parity] - expected) <= 2);
    }
}

TEST_CASE("cubes are pairwise distinct with disjoint spatial interiors") {
    const FieldModel field = flat_field();
    const SpaceTimeWindow w{{{-0.5, -0.5}, {0.5, 0.5}}, 0.8, 1.0};
    const ShiftedGrid grid = build_grid(w, 0.125, field);
    std::set<std::tuple<int, int, int>> seen;
    for (const GridCube& c : grid.cubes) {
        CHECK(seen.insert({c.zx, c.zy, c.ti}).second);
    }
}

TEST_CASE("grid drops cubes outside the mixing zone or at saturated states") {
    const FieldModel field = flat_field();
    // at t about 0.5 the zone is |x2| < 0.5, so the top/bottom of this
    // window cannot host cubes
    const SpaceTimeWindow w{{{-1.0, -1.0}, {1.0, 1.0}}, 0.5, 0.6};
    const ShiftedGrid grid = build_grid(w, 0.125, field);
    for (const GridCube& c : grid.cubes) {
        const double edge = std::abs(grid.cube_center(c).y) + 0.0625;
        const double t_min = grid.cube_t_center(c) - 0.0625;
        CHECK(edge < t_min); // cube closure inside |x2| < t
    }
}

TEST_CASE("discretization reproduces constants on inner cubes") {
    const FieldModel field = flat_field();
    const SpaceTimeWindow w{{{-0.5, -0.5}, {0.5, 0.5}}, 0.8, 1.0};
    const ShiftedGrid grid = build_grid(w, 0.125, field);
    const Discretization disc = discretize(field, grid, [](const StateZ&) { return 3.5; });

    const GridCube& c = grid.cubes.front();
    const Vec2 ctr = grid.cube_center(c);
    const double tc = grid.cube_t_center(c);
    CHECK(disc.eval(ctr, tc) == doctest::Approx(3.5));
    CHECK(disc.eval({ctr.x + 0.04, ctr.y - 0.04}, tc) == doctest::Approx(3.5)); // inner
    CHECK(disc.eval({ctr.x + 0.06, ctr.y}, tc) == 0.0);                         // ring
}

TEST_CASE("discretized gauge integral approaches its share of the window integral") {
    const FieldModel field = flat_field();
    const SpaceTimeWindow w{{{-0.5, -0.5}, {0.5, 0.5}}, 0.7, 1.0};

    // spatial closed form for the flat gauge on this window
    auto exact_integral = [&](double t) {
        return 1.0 - 1.0 / (12.0 * t * t);
    };
    const double mu = exact_integral(1.0); // stand-in error scale

    for (double s : {0.125, 0.0625, 0.03125}) {
        const ShiftedGrid grid = build_grid(w, s, field);
        const Discretization disc =
            discretize(field, grid, [](const StateZ& z) { return gauge_D(z); });
        double worst = 0.0;
        for (int parity : {0, 1}) {
            // probe parity-live times: centers of the inner windows
            for (const GridCube& c : grid.cubes) {
                if (c.parity != parity) continue;
                const double t = grid.cube_t_center(c);
                if (t < w.t0 || t > w.t1) continue;
                const double got = disc.inner_integral(parity, t);
                const double want = 0.5 * (9.0 / 16.0) * exact_integral(t);
                worst = std::max(worst, std::abs(got - want));
            }
        }
        if (s == 0.03125) CHECK(worst <= (1.0 / 8.0) * (9.0 / 16.0) * mu);
    }
}

TEST_CASE("discretization error of a linear profile decays linearly in s") {
    const FieldModel field = flat_field();
    const SpaceTimeWindow w{{{-0.5, -0.5}, {0.5, 0.5}}, 0.9, 1.0};
    std::vector<double> errs;
    for (double s : {0.125, 0.0625, 0.03125}) {
        const ShiftedGrid grid = build_grid(w, s, field);
        const Discretization disc =
            discretize(field, grid, [](const StateZ& z) { return z.rho; });
        double worst = 0.0;
        for (const GridCube& c : grid.cubes) {
            const Vec2 ctr = grid.cube_center(c);
            const double tc = grid.cube_t_center(c);
            for (double dx : {-0.3 * s, 0.3 * s}) {
                const Vec2 p{ctr.x + dx, ctr.y + dx};
                worst = std::max(worst,
                                 std::abs(disc.eval(p, tc) - field.eval(p, tc).rho));
            }
        }
        errs.push_back(worst);
    }
    const double slope = std::log2(errs[0] / errs[2]) / 2.0;
    CHECK(slope >= 0.9);
}
