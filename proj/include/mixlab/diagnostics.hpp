#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mixlab/field.hpp"

namespace mixlab {

/// Error envelope for the degraded-average bound: alpha in [0, 1),
/// monotone space/time envelopes S, T vanishing only at zero,
/// E(lambda, t) = S(1 - |lambda|) T(t) and q_alpha(A) = min(1, A^alpha) / A.
struct DegradedBoundSpec {
    double alpha = 0.0;
    std::function<double(double)> S = [](double) { return 1.0; };
    std::function<double(double)> T = [](double) { return 1.0; };

    double E(double lambda, double t) const { return S(1.0 - std::abs(lambda)) * T(t); }
    double q_alpha(double area) const;

    /// alpha = 0, S = T = 1: the coarsest informative envelope.
    static DegradedBoundSpec constant();
    /// Exponential envelopes S_eps(r) = eps exp(-1/(eps r)),
    /// T_eps(t) = eps exp(-(1/t + t)/eps).
    static DegradedBoundSpec exponential(double eps_space, double eps_time);
};

/// Rectangle Q = S x L in (s, lambda) coordinates at a fixed time; its
/// image under the zone parametrization is the queried region.
struct RectangleQuery {
    double s0 = 0.0, s1 = 0.0;     // horizontal extent
    double l0 = 0.0, l1 = 0.0;     // lambda extent, inside (-1, 1)
    double t = 0.0;

    double mean_lambda() const { return 0.5 * (l0 + l1); }
    double param_area() const { return (s1 - s0) * (l1 - l0); }
};

enum class Observable { density, velocity, power_balance };

struct AverageResult {
    double scalar = 0.0; // density or power balance
    Vec2 vector;         // velocity
};

/// Average of the observable over the image of the rectangle at time t
/// (constant-Jacobian pushforward; midpoint rule with `resolution` points
/// per axis). Power balance is |u|^2 + rho u_2 with u = (v - (0, rho)) / 2.
AverageResult rectangle_average(const FieldModel& field, Observable obs,
                                const RectangleQuery& query, int resolution = 256);

struct DegradedCheckEntry {
    RectangleQuery query;
    double average = 0.0;
    double bound = 0.0; // E(<L>, t) q_alpha(|image|)
    double ratio = 0.0; // |average - <L>| / bound
};

struct DegradedCheckReport {
    double max_ratio = 0.0;
    DegradedCheckEntry worst;
    std::size_t rectangles = 0;
    bool pass = false; // max_ratio <= 1
};

/// Worst-case ratio of the degraded-average bound over a rectangle family.
DegradedCheckReport degraded_bound_check(const FieldModel& field, const DegradedBoundSpec& spec,
                                         const std::vector<RectangleQuery>& family,
                                         int resolution = 256);

/// Deterministic dyadic family of >= min_count rectangles inside
/// (s0, s1) x (-lambda_span, lambda_span) at time t.
std::vector<RectangleQuery> rectangle_family(double s0, double s1, double lambda_span, double t,
                                             std::size_t min_count = 200);

struct MixingBoxResult {
    Box2 box;
    double integral_heavy = 0.0; // integral of (1 - rho)
    double integral_light = 0.0; // integral of (1 + rho)
    bool pass = false;
};

struct MixingReport {
    std::vector<MixingBoxResult> boxes;
    std::size_t failures = 0;
    bool pass = false;
};

/// Both fluid-sign integrals must exceed threshold_scale * |box| on every
/// box (boxes are spatial rectangles inside the zone at time t).
MixingReport mixing_check(const FieldModel& field, double t, const std::vector<Box2>& boxes,
                          double threshold_scale = 1e-6, int resolution = 128);

struct VolumeProportion {
    double fraction_heavy = 0.0; // (1 + mean rho) / 2
    double fraction_light = 0.0;
    double empirical_heavy = 0.0; // sample fraction with rho within band of +1
    double empirical_light = 0.0;
};

VolumeProportion volume_proportion(const FieldModel& field, const RectangleQuery& query,
                                   double band = 0.1, int resolution = 256);

struct ResidualRow {
    double spacing = 0.0;
    double row0 = 0.0, row1 = 0.0, row2 = 0.0;
};

struct ResidualTable {
    SpaceTimeWindow window;
    std::vector<ResidualRow> rows;
    double order0 = 0.0, order1 = 0.0, order2 = 0.0; // fitted convergence orders
};

using FieldEval = std::function<StateZ(const Vec2&, double)>;

/// Finite-difference residual norms of the three linear rows over sample
/// lattices in each window, with log-log fitted convergence orders.
std::vector<ResidualTable> linear_residual_suite(const FieldEval& field,
                                                 const std::vector<SpaceTimeWindow>& windows,
                                                 const std::vector<double>& spacings,
                                                 int lattice = 6);

} // namespace mixlab
