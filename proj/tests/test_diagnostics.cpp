#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mixlab/diagnostics.hpp"
#include "mixlab/scheme.hpp"
#include "mixlab/segment.hpp"

using namespace mixlab;

namespace {

FieldModel flat_field(double c = 1.0) {
    return {SubsolutionField::flat(c, 2.0), HullParams{5.0, 0.0}, Profile::cosine()};
}

// one hand-built atom at the center of the zone
FieldModel field_with_atom(int k, double side = 0.25) {
    FieldModel field = flat_field();
    const Vec2 ctr{0.0, 0.0};
    const double tc = 0.8;
    const SegmentResult seg = lambda_segment(field.eval(ctr, tc), field.params());
    WaveAtom atom;
    atom.center = ctr;
    atom.t_center = tc;
    atom.side_space = side;
    atom.side_time = side;
    atom.direction = seg.lambda_max * seg.direction;
    atom.freq = solve_direction(atom.direction, 1e-9);
    atom.k = static_cast<std::uint32_t>(k);
    field.append_pass(side, {atom});
    return field;
}

} // namespace

TEST_CASE("coarse-grained rectangle averages and observables") {
    const FieldModel field = flat_field();
    RectangleQuery q;
    q.s0 = -0.7;
    q.s1 = 1.1;
    q.l0 = -0.3;
    q.l1 = 0.8;
    q.t = 0.9;

    CHECK(std::abs(rectangle_average(field, Observable::density, q, 128).scalar -
                   q.mean_lambda()) <= 1e-8);
    const Vec2 vel = rectangle_average(field, Observable::velocity, q, 64).vector;
    CHECK(vel.norm() <= 1e-12);
    CHECK(std::abs(rectangle_average(field, Observable::power_balance, q, 64).scalar) <= 1e-12);
}

TEST_CASE("degraded bound is exactly zero on the coarse-grained field") {
    const FieldModel field = flat_field();
    {
        const auto family = rectangle_family(-1.0, 1.0, 0.9, 0.8, 100);
        const auto report =
            degraded_bound_check(field, DegradedBoundSpec::constant(), family, 96);
        CHECK(report.max_ratio <= 1e-8);
        CHECK(report.pass);
    }
    {
        // exponential envelopes are tiny near the zone edges, so probe a
        // central band where they stay resolvable
        const auto family = rectangle_family(-1.0, 1.0, 0.5, 0.8, 100);
        const auto report =
            degraded_bound_check(field, DegradedBoundSpec::exponential(0.5, 0.5), family, 96);
        CHECK(report.max_ratio <= 1e-8);
        CHECK(report.pass);
    }
}

TEST_CASE("single-atom field keeps a finite recorded ratio") {
    const FieldModel field = field_with_atom(16);
    RectangleQuery q;
    q.s0 = -0.125;
    q.s1 = 0.125;
    q.l0 = -0.15;
    q.l1 = 0.15;
    q.t = 0.8;
    const auto report =
        degraded_bound_check(field, DegradedBoundSpec::constant(), {q}, 192);
    CHECK(std::isfinite(report.max_ratio));
    CHECK(report.rectangles == 1);
}

TEST_CASE("contour strips average to their lambda value within the envelope") {
    const FieldModel field = field_with_atom(32);
    const DegradedBoundSpec spec = DegradedBoundSpec::constant();
    for (double lam : {-0.5, 0.0, 0.4}) {
        for (double R : {1.0, 2.0, 4.0}) {
            RectangleQuery q;
            q.s0 = -R;
            q.s1 = R;
            const double half = 0.5 * std::pow(R, -0.5);
            q.l0 = lam - half;
            q.l1 = lam + half;
            q.t = 0.8;
            const double avg = rectangle_average(field, Observable::density, q, 256).scalar;
            const double area = field.base().geometry().c * q.t * q.param_area();
            CHECK(std::abs(avg - q.mean_lambda()) <=
                  spec.E(q.mean_lambda(), q.t) * spec.q_alpha(area) + 1e-9);
        }
    }
}

TEST_CASE("mixing check passes inside the zone and fails on saturated regions") {
    const FieldModel field = flat_field();
    const double t = 0.8;
    // interior boxes: strictly mixed
    std::vector<Box2> inside = {{{-0.5, -0.4}, {0.5, 0.4}},
                                {{-0.2, 0.1}, {0.3, 0.5}},
                                {{0.0, -0.6}, {0.4, -0.1}}};
    const auto ok = mixing_check(field, t, inside);
    CHECK(ok.pass);

    // saturated control: a box above the zone has rho = +1 so the heavy-side
    // integral vanishes
    const auto bad = mixing_check(field, t, {{{-0.5, 0.9}, {0.5, 1.3}}});
    CHECK_FALSE(bad.pass);
    CHECK(bad.boxes[0].integral_heavy <= 1e-12);
    CHECK(bad.boxes[0].integral_light > 0.0);
}

TEST_CASE("volume proportions follow the strip average") {
    const FieldModel field = flat_field();
    {
        RectangleQuery q{-1.0, 1.0, -0.4, 0.4, 0.8};
        const auto vp = volume_proportion(field, q);
        CHECK(vp.fraction_heavy == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(vp.fraction_light == doctest::Approx(0.5).epsilon(1e-10));
    }
    {
        RectangleQuery q{-1.0, 1.0, 0.25, 0.75, 0.8};
        const auto vp = volume_proportion(field, q);
        CHECK(vp.fraction_heavy == doctest::Approx(0.75).epsilon(1e-10));
        CHECK(vp.fraction_light == doctest::Approx(0.25).epsilon(1e-10));
        // the coarse-grained field has no saturated samples strictly inside
        CHECK(vp.empirical_heavy == 0.0);
        CHECK(vp.empirical_light == 0.0);
    }
}

TEST_CASE("residual suite flags a corrupted flux field") {
    const FieldModel field = flat_field();
    auto good = [&](const Vec2& x, double t) { return field.eval(x, t); };
    auto corrupted = [&](const Vec2& x, double t) {
        StateZ z = field.eval(x, t);
        z.m = 1.1 * z.m;
        return z;
    };
    const std::vector<SpaceTimeWindow> windows = {
        {{{-0.3, -0.35}, {0.3, 0.35}}, 0.6, 0.9}};
    const std::vector<double> spacings = {1e-2, 5e-3, 2.5e-3};

    const auto good_tables = linear_residual_suite(good, windows, spacings, 5);
    CHECK(good_tables[0].order2 >= 1.8);

    const auto bad_tables = linear_residual_suite(corrupted, windows, spacings, 5);
    CHECK(bad_tables[0].rows.back().row2 >= 1e-3); // residual does not vanish
    CHECK(bad_tables[0].order2 <= 0.5);
}

TEST_CASE("velocity recovery matches the spectral solve on the flat field") {
    const FieldModel field = flat_field();
    // flat: both the recovered u = (v - (0, rho))/2 and the spectral
    // velocity vanish identically
    for (double y : {-0.5, 0.0, 0.55}) {
        const StateZ z = field.eval({0.3, y}, 0.8);
        CHECK(z.velocity_u().norm() <= 1e-12);
    }
}

TEST_CASE("power-balance averages settle as the frequency doubles") {
    RectangleQuery q;
    q.s0 = -0.125;
    q.s1 = 0.125;
    q.l0 = -0.18;
    q.l1 = 0.18;
    q.t = 0.8;
    std::vector<double> avgs;
    for (int k : {8, 16, 32, 64, 128, 256}) {
        const FieldModel field = field_with_atom(k);
        avgs.push_back(rectangle_average(field, Observable::power_balance, q, 401).scalar);
    }
    std::vector<double> diffs;
    for (std::size_t i = 1; i < avgs.size(); ++i)
        diffs.push_back(std::abs(avgs[i] - avgs[i - 1]));
    CHECK(diffs.back() <= 0.1 * diffs.front());
}
