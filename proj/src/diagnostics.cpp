#include "mixlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/linear_rows.hpp"
#include "mixlab/subsolution.hpp"

namespace mixlab {

double DegradedBoundSpec::q_alpha(double area) const {
    return std::min(1.0, std::pow(area, alpha)) / area;
}

DegradedBoundSpec DegradedBoundSpec::constant() { return {}; }

DegradedBoundSpec DegradedBoundSpec::exponential(double eps_space, double eps_time) {
    DegradedBoundSpec spec;
    spec.S = [eps_space](double r) {
        return r > 0.0 ? eps_space * std::exp(-1.0 / (eps_space * r)) : 0.0;
    };
    spec.T = [eps_time](double t) {
        return t > 0.0 ? eps_time * std::exp(-(1.0 / t + t) / eps_time) : 0.0;
    };
    return spec;
}

namespace {

void check_query(const FieldModel& field, const RectangleQuery& q) {
    if (!(q.s1 > q.s0) || !(q.l1 > q.l0)) throw Error("empty rectangle query");
    if (q.l0 < -1.0 || q.l1 > 1.0)
        throw OutsideMixingZone("rectangle lambda range must lie inside (-1, 1)");
    if (!(q.t > 0.0)) throw InvalidTime("rectangle query requires t > 0");
    (void)field;
}

} // namespace

AverageResult rectangle_average(const FieldModel& field, Observable obs,
                                const RectangleQuery& query, int resolution) {
    check_query(field, query);
    const MixingGeometry& geom = field.base().geometry();
    const int n = resolution;
    const double ds = (query.s1 - query.s0) / n;
    const double dl = (query.l1 - query.l0) / n;

    double scalar = 0.0;
    Vec2 vec;
    for (int j = 0; j < n; ++j) {
        const double lam = query.l0 + (j + 0.5) * dl;
        for (int i = 0; i < n; ++i) {
            const double s = query.s0 + (i + 0.5) * ds;
            const Vec2 x = xmap(geom, s, lam, query.t);
            const StateZ z = field.eval(x, query.t);
            switch (obs) {
                case Observable::density:
                    scalar += z.rho;
                    break;
                case Observable::velocity:
                    vec += z.velocity_u();
                    break;
                case Observable::power_balance: {
                    const Vec2 u = z.velocity_u();
                    scalar += u.norm2() + z.rho * u.y;
                    break;
                }
            }
        }
    }
    // Constant Jacobian c t cancels between integral and area.
    const double inv = 1.0 / (static_cast<double>(n) * n);
    return {scalar * inv, vec * inv};
}

DegradedCheckReport degraded_bound_check(const FieldModel& field, const DegradedBoundSpec& spec,
                                         const std::vector<RectangleQuery>& family,
                                         int resolution) {
    DegradedCheckReport report;
    report.rectangles = family.size();
    const double ct_scale = field.base().geometry().c;
    for (const RectangleQuery& q : family) {
        const double avg = rectangle_average(field, Observable::density, q, resolution).scalar;
        const double image_area = ct_scale * q.t * q.param_area();
        const double bound = spec.E(q.mean_lambda(), q.t) * spec.q_alpha(image_area);
        const double ratio = std::abs(avg - q.mean_lambda()) / bound;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst = {q, avg, bound, ratio};
        }
    }
    report.pass = report.max_ratio <= 1.0;
    return report;
}

std::vector<RectangleQuery> rectangle_family(double s0, double s1, double lambda_span, double t,
                                             std::size_t min_count) {
    std::vector<RectangleQuery> family;
    // Dyadic widths and positions; lambda extents shrink dyadically around
    // a sweep of centers.
    for (int level = 0; family.size() < min_count && level < 8; ++level) {
        const int nseg = 1 << level;
        const double ws = (s1 - s0) / nseg;
        const double wl = 2.0 * lambda_span / nseg;
        for (int i = 0; i < nseg; ++i) {
            for (int j = 0; j < nseg; ++j) {
                RectangleQuery q;
                q.s0 = s0 + i * ws;
                q.s1 = q.s0 + ws;
                q.l0 = -lambda_span + j * wl;
                q.l1 = q.l0 + wl;
                q.t = t;
                family.push_back(q);
            }
        }
        // wide-and-thin companions probing the contour-strip regime
        for (int j = 0; j < nseg; ++j) {
            RectangleQuery q;
            q.s0 = s0;
            q.s1 = s1;
            q.l0 = -lambda_span + j * wl;
            q.l1 = q.l0 + wl;
            q.t = t;
            family.push_back(q);
        }
    }
    return family;
}

MixingReport mixing_check(const FieldModel& field, double t, const std::vector<Box2>& boxes,
                          double threshold_scale, int resolution) {
    MixingReport report;
    for (const Box2& box : boxes) {
        MixingBoxResult r;
        r.box = box;
        const int n = resolution;
        const double dx = box.width() / n;
        const double dy = box.height() / n;
        double heavy = 0.0, light = 0.0;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                const Vec2 p{box.lo.x + (i + 0.5) * dx, box.lo.y + (j + 0.5) * dy};
                const double rho = field.eval(p, t).rho;
                heavy += 1.0 - rho;
                light += 1.0 + rho;
            }
        }
        r.integral_heavy = heavy * dx * dy;
        r.integral_light = light * dx * dy;
        const double threshold = threshold_scale * box.area();
        r.pass = r.integral_heavy > threshold && r.integral_light > threshold;
        if (!r.pass) ++report.failures;
        report.boxes.push_back(r);
    }
    report.pass = report.failures == 0;
    return report;
}

VolumeProportion volume_proportion(const FieldModel& field, const RectangleQuery& query,
                                   double band, int resolution) {
    check_query(field, query);
    const MixingGeometry& geom = field.base().geometry();
    const int n = resolution;
    const double ds = (query.s1 - query.s0) / n;
    const double dl = (query.l1 - query.l0) / n;
    double mean = 0.0;
    std::size_t near_heavy = 0, near_light = 0;
    for (int j = 0; j < n; ++j) {
        const double lam = query.l0 + (j + 0.5) * dl;
        for (int i = 0; i < n; ++i) {
            const double s = query.s0 + (i + 0.5) * ds;
            const double rho = field.eval(xmap(geom, s, lam, query.t), query.t).rho;
            mean += rho;
            if (std::abs(rho - 1.0) <= band) ++near_heavy;
            if (std::abs(rho + 1.0) <= band) ++near_light;
        }
    }
    mean /= static_cast<double>(n) * n;
    VolumeProportion vp;
    vp.fraction_heavy = 0.5 * (1.0 + mean);
    vp.fraction_light = 0.5 * (1.0 - mean);
    vp.empirical_heavy = static_cast<double>(near_heavy) / (static_cast<double>(n) * n);
    vp.empirical_light = static_cast<double>(near_light) / (static_cast<double>(n) * n);
    return vp;
}

namespace {

double fit_order(const std::vector<double>& spacings, const std::vector<double>& norms) {
    // least-squares slope of log(norm) against log(1/spacing)
    const std::size_t n = spacings.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (norms[i] <= 0.0) continue;
        const double x = -std::log(spacings[i]);
        const double y = -std::log(norms[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 2) return 0.0;
    const double denom = used * sxx - sx * sx;
    return denom != 0.0 ? (used * sxy - sx * sy) / denom : 0.0;
}

} // namespace

std::vector<ResidualTable> linear_residual_suite(const FieldEval& field,
                                                 const std::vector<SpaceTimeWindow>& windows,
                                                 const std::vector<double>& spacings,
                                                 int lattice) {
    if (spacings.size() < 3) throw Error("residual suite needs >= 3 spacings");

    std::vector<ResidualTable> tables;
    for (const SpaceTimeWindow& w : windows) {
        ResidualTable table;
        table.window = w;
        std::vector<double> n0, n1, n2;
        for (double h : spacings) {
            ResidualRow row;
            row.spacing = h;
            for (int l = 0; l < lattice; ++l) {
                const double t = w.t0 + (w.t1 - w.t0) * (l + 0.5) / lattice;
                for (int j = 0; j < lattice; ++j) {
                    for (int i = 0; i < lattice; ++i) {
                        const Vec2 p{w.space.lo.x + w.space.width() * (i + 0.5) / lattice,
                                     w.space.lo.y + w.space.height() * (j + 0.5) / lattice};
                        const auto rows = linear_rows_fd(field, p, t, h);
                        row.row0 = std::max(row.row0, std::abs(rows[0]));
                        row.row1 = std::max(row.row1, std::abs(rows[1]));
                        row.row2 = std::max(row.row2, std::abs(rows[2]));
                    }
                }
            }
            table.rows.push_back(row);
            n0.push_back(row.row0);
            n1.push_back(row.row1);
            n2.push_back(row.row2);
        }
        table.order0 = fit_order(spacings, n0);
        table.order1 = fit_order(spacings, n1);
        table.order2 = fit_order(spacings, n2);
        tables.push_back(std::move(table));
    }
    return tables;
}

} // namespace mixlab
