#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mixlab/diagnostics.hpp"
#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/linear_rows.hpp"
#include "mixlab/subsolution.hpp"

using namespace mixlab;

TEST_CASE("flat coarse-grained state worked values") {
    {
        const StateZ z = flat_subsolution(1.0, {0.3, 0.0}, 1.0);
        CHECK(z.rho == doctest::Approx(0.0));
        CHECK(z.v.norm() == doctest::Approx(0.0));
        CHECK(z.m.norm() == doctest::Approx(0.0)); // (1 - c)/2 = 0 at c = 1
    }
    {
        const StateZ z = flat_subsolution(0.7, {0.0, 5.0}, 1.0); // above the zone
        CHECK(z.rho == doctest::Approx(1.0));
        CHECK(z.v.y == doctest::Approx(1.0));
        CHECK(z.m.y == doctest::Approx(0.5));
        HullParams params{5.0, 0.0};
        CHECK(in_constraint_set(z, params));
    }
    {
        const StateZ z = flat_subsolution(1.0, {0.0, 0.5}, 1.0);
        CHECK(z.rho == doctest::Approx(0.5));
        CHECK(z.m.y == doctest::Approx(0.125));
        CHECK((z.m - 0.5 * z.rho * z.v).norm() == doctest::Approx(0.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(flat_subsolution(1.0, {0, 0}, 0.0), InvalidTime);
    CHECK_THROWS_AS(flat_subsolution(2.5, {0, 0}, 1.0), InvalidSpeed);
    CHECK_THROWS_AS(flat_subsolution(-0.1, {0, 0}, 1.0), InvalidSpeed);
}

TEST_CASE("flat field is strictly interior with the derived relative-flux gap") {
    HullParams params{5.0, 0.0};
    for (double c : {0.25, 0.5, 1.0, 1.5, 1.9}) {
        for (int i = 1; i < 200; ++i) {
            const double lambda = -1.0 + 2.0 * i / 200.0;
            const double t = 0.8;
            const StateZ z = flat_subsolution(c, {0.0, lambda * c * t}, t);
            CHECK(z.rho == doctest::Approx(lambda).epsilon(1e-12));
            const auto cls = hull_contains(z, params);
            CHECK(cls.strictly_inside());
            // |m - rho v / 2| = |1 - c| (1 - lambda^2) / 2 in closed form
            const double gap = (z.m - 0.5 * z.rho * z.v).norm();
            const double expected = std::abs(1.0 - c) * (1.0 - lambda * lambda) / 2.0;
            CHECK(std::abs(gap - expected) <= 1e-12);
            // and the inequality slack is (1 - |1-c|)(1 - lambda^2)/2
            const double slack2 = 0.5 * (1.0 - lambda * lambda) - gap;
            CHECK(cls.slacks[1] == doctest::Approx(slack2).epsilon(1e-12));
        }
    }
}

TEST_CASE("flat field conserves mass away from the zone edges") {
    const SubsolutionField base = SubsolutionField::flat(1.0, 1.0);
    auto field = [&](const Vec2& x, double t) { return base.eval(x, t); };
    const std::vector<SpaceTimeWindow> windows = {
        {{{-0.4, -0.3}, {0.4, 0.3}}, 0.6, 0.9}};
    const auto tables =
        linear_residual_suite(field, windows, {1e-2, 5e-3, 2.5e-3}, 5);
    // rows 0 and 1 vanish identically for the flat field
    CHECK(tables[0].rows.back().row0 <= 1e-12);
    CHECK(tables[0].rows.back().row1 <= 1e-12);
    // conservation row converges at the order of the centered stencil
    CHECK(tables[0].order2 >= 1.8);
    CHECK(tables[0].rows.back().row2 <= 1e-4);
}

TEST_CASE("xmap round trips and reproduces constants") {
    const MixingGeometry flat(1.0, 1.0);
    CHECK(xmap(flat, 2.0, 0.5, 1.0).x == doctest::Approx(2.0));
    CHECK(xmap(flat, 2.0, 0.5, 1.0).y == doctest::Approx(0.5));
    const auto [s, lam] = xmap_inverse(flat, {2.0, 0.5}, 1.0);
    CHECK(s == doctest::Approx(2.0));
    CHECK(lam == doctest::Approx(0.5));
    CHECK_THROWS_AS(xmap_inverse(flat, {0.0, 1.5}, 1.0), OutsideMixingZone);

    // constant sampled interface shifts the zone rigidly
    SampledInterface si;
    si.s_grid = {-4, -2, 0, 2, 4};
    si.t_grid = {0.0, 2.0};
    si.values.assign(10, 3.0);
    const MixingGeometry shifted(0.8, 2.0, si);
    for (double sq : {-3.0, -0.7, 1.9}) {
        const Vec2 p = xmap(shifted, sq, 0.25, 1.3);
        CHECK(p.y == doctest::Approx(3.0 + 0.8 * 0.25 * 1.3).epsilon(1e-14));
    }

    std::mt19937 rng(321);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 100000; ++i) {
        const double s0 = 4.0 * uni(rng);
        const double l0 = 0.999 * uni(rng);
        const double t0 = 0.05 + 0.95 * std::abs(uni(rng));
        const auto [s1, l1] = xmap_inverse(flat, xmap(flat, s0, l0, t0), t0);
        CHECK(std::abs(s1 - s0) <= 1e-10);
        CHECK(std::abs(l1 - l0) <= 1e-10);
    }
}

TEST_CASE("rectangle averages of the flat density equal the strip midpoint") {
    FieldModel field(SubsolutionField::flat(1.0, 1.0), HullParams{5.0, 0.0},
                     Profile::cosine());
    for (double l0 : {-0.8, -0.2, 0.1}) {
        RectangleQuery q;
        q.s0 = -1.3;
        q.s1 = 0.9;
        q.l0 = l0;
        q.l1 = l0 + 0.55;
        q.t = 0.75;
        const double avg = rectangle_average(field, Observable::density, q, 128).scalar;
        CHECK(std::abs(avg - q.mean_lambda()) <= 1e-8);
    }
}

TEST_CASE("sampled flat interface reproduces the closed form") {
    SampledInterface si;
    for (int i = 0; i <= 16; ++i) si.s_grid.push_back(-4.0 + 0.5 * i);
    si.t_grid = {0.1, 0.55, 1.0};
    si.values.assign(si.s_grid.size() * si.t_grid.size(), 0.0);

    const double c = 0.75;
    SampledFieldOptions opts;
    opts.bs_box = {{-4.0, -2.0}, {4.0, 2.0}};
    opts.bs_n1 = 64;
    opts.bs_n2 = 64;
    opts.n_lambda = 129;
    opts.n_time = 5;
    opts.t_lo = 0.2;
    opts.t_hi = 1.0;

    SampledBuildReport report;
    const SubsolutionField sampled =
        SubsolutionField::sampled(MixingGeometry(c, 1.0, si), HullParams{5.0, 0.0}, opts,
                                  &report);
    CHECK_FALSE(report.hull_violation);
    CHECK(report.gamma_clamped_nodes == 0);

    std::mt19937 rng(77);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const Vec2 x{3.0 * uni(rng), 1.5 * uni(rng)};
        const double t = 0.3 + 0.6 * std::abs(uni(rng));
        const StateZ a = sampled.eval(x, t);
        const StateZ b = flat_subsolution(c, x, t);
        CHECK((a - b).norm() <= 1e-8);
    }
}

TEST_CASE("flat gamma has magnitude |1 - c|") {
    // the ansatz m = rho v / 2 + (1 - rho^2) gamma / 2 forces
    // gamma = (0, 1 - c) for the flat field
    for (double c : {0.4, 1.0, 1.6}) {
        const double lambda = 0.37;
        const double t = 0.9;
        const StateZ z = flat_subsolution(c, {0.0, lambda * c * t}, t);
        const Vec2 gamma_vec =
            2.0 / (1.0 - z.rho * z.rho) * (z.m - 0.5 * z.rho * z.v);
        CHECK(gamma_vec.x == doctest::Approx(0.0));
        CHECK(gamma_vec.y == doctest::Approx(1.0 - c).epsilon(1e-12));
        CHECK(gamma_vec.norm() == doctest::Approx(std::abs(1.0 - c)).epsilon(1e-12));
        CHECK(gamma_vec.norm() < 1.0);
    }
}

TEST_CASE("smooth bump interface builds end to end") {
    SampledInterface si;
    for (int i = 0; i <= 32; ++i) si.s_grid.push_back(-4.0 + 0.25 * i);
    si.t_grid = {0.1, 0.4, 0.7, 1.0};
    for (double t : si.t_grid)
        for (double s : si.s_grid) {
            (void)t;
            si.values.push_back(std::exp(-s * s));
        }

    SampledFieldOptions opts;
    opts.bs_box = {{-4.0, -2.5}, {4.0, 3.5}};
    opts.bs_n1 = 64;
    opts.bs_n2 = 64;
    opts.n_lambda = 65;
    opts.n_time = 4;
    opts.t_lo = 0.25;
    opts.t_hi = 1.0;

    SampledBuildReport report;
    const SubsolutionField f = SubsolutionField::sampled(MixingGeometry(0.5, 1.0, si),
                                                         HullParams{5.0, 0.0}, opts, &report);
    CHECK(std::isfinite(report.worst_hull_slack));
    CHECK(std::isfinite(report.worst_conservation_residual));
    const StateZ z = f.eval({0.2, 0.6}, 0.8);
    CHECK(z.finite());
    CHECK(std::abs(z.rho) <= 1.0);
}
