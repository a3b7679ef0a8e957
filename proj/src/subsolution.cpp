#include "mixlab/subsolution.hpp"

#include <algorithm>
#include <cmath>

#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/linear_rows.hpp"

namespace mixlab {

MixingGeometry::MixingGeometry(double c_, double T_end_, std::optional<SampledInterface> interface_)
    : c(c_), T_end(T_end_), interface(std::move(interface_)) {
    if (!(c > 0.0 && c < 2.0))
        throw InvalidSpeed("mixing speed must lie in (0, 2)");
    if (!(T_end > 0.0)) throw InvalidTime("T_end must be positive");
    if (interface) interface->validate();
}

double MixingGeometry::interface_height(double s, double t) const {
    return interface ? interface->eval(s, t) : 0.0;
}

Vec2 xmap(const MixingGeometry& geom, double s, double lambda, double t) {
    if (!(t > 0.0)) throw InvalidTime("xmap requires t > 0");
    return {s, geom.interface_height(s, t) + geom.c * lambda * t};
}

std::pair<double, double> xmap_inverse(const MixingGeometry& geom, const Vec2& x, double t) {
    if (!(t > 0.0)) throw InvalidTime("xmap_inverse requires t > 0");
    const double lambda = (x.y - geom.interface_height(x.x, t)) / (geom.c * t);
    if (std::abs(lambda) > 1.0 + 1e-12)
        throw OutsideMixingZone("point outside the closure of the mixing zone");
    return {x.x, std::clamp(lambda, -1.0, 1.0)};
}

StateZ flat_subsolution(double c, const Vec2& x, double t) {
    if (!(c > 0.0 && c < 2.0))
        throw InvalidSpeed("mixing speed must lie in (0, 2)");
    if (!(t > 0.0)) throw InvalidTime("flat subsolution requires t > 0");
    const double lambda = std::clamp(x.y / (c * t), -1.0, 1.0);
    StateZ z;
    z.rho = lambda;
    z.v = {0.0, lambda};
    // Conservation-law closure, continuous with m = rho v / 2 at |lambda| = 1.
    z.m = {0.0, 0.5 * (c * lambda * lambda + 1.0 - c)};
    return z;
}

// ---------------------------------------------------------------------------
// Sampled construction
// ---------------------------------------------------------------------------

struct SubsolutionField::SampledData {
    SampledFieldOptions opts;
    HullParams params;
    std::vector<double> t_slices;
    std::vector<BiotSavartResult> bs;    // velocity grids per slice
    std::vector<std::vector<double>> gamma; // per slice: [l * n1 + i]

    double wrap_x1(double x) const {
        const Box2& b = opts.bs_box;
        const double L = b.width();
        double u = std::fmod(x - b.lo.x, L);
        if (u < 0.0) u += L;
        return b.lo.x + u;
    }

    Vec2 velocity(const Vec2& x_in, double t) const {
        // linear in t between slices, bilinear in space, clamped at edges
        const Box2& b = opts.bs_box;
        const double x = wrap_x1(x_in.x);
        const double y = std::clamp(x_in.y, b.lo.y, b.hi.y);
        const int ns = static_cast<int>(t_slices.size());
        int j0 = 0;
        while (j0 + 1 < ns - 1 && t_slices[j0 + 1] < t) ++j0;
        const int j1 = std::min(j0 + 1, ns - 1);
        double w = 0.0;
        if (j1 > j0)
            w = std::clamp((t - t_slices[j0]) / (t_slices[j1] - t_slices[j0]), 0.0, 1.0);

        auto sample = [&](const BiotSavartResult& g) -> Vec2 {
            const double fx = (x - b.lo.x) / b.width() * g.n1;
            const double fy = (y - b.lo.y) / b.height() * g.n2;
            const int i0 = std::min(static_cast<int>(fx), g.n1 - 1);
            const int i1 = (i0 + 1) % g.n1;
            const int l0 = std::min(static_cast<int>(fy), g.n2 - 1);
            const int l1 = l0 + 1;
            const double ax = fx - i0, ay = fy - l0;
            auto lerp = [&](auto&& get) {
                return (1 - ax) * (1 - ay) * get(i0, l0) + ax * (1 - ay) * get(i1, l0) +
                       (1 - ax) * ay * get(i0, l1) + ax * ay * get(i1, l1);
            };
            return {lerp([&](int i, int l) { return g.at_u1(i, l); }),
                    lerp([&](int i, int l) { return g.at_u2(i, l); })};
        };
        const Vec2 v0 = sample(bs[j0]);
        if (j1 == j0 || w == 0.0) return v0;
        const Vec2 v1 = sample(bs[j1]);
        return (1.0 - w) * v0 + w * v1;
    }

    double gamma2(double s_in, double lambda, double t) const {
        const Box2& b = opts.bs_box;
        const double s = wrap_x1(s_in);
        const int n1 = opts.bs_n1;
        const int nl = opts.n_lambda;
        const int ns = static_cast<int>(t_slices.size());
        int j0 = 0;
        while (j0 + 1 < ns - 1 && t_slices[j0 + 1] < t) ++j0;
        const int j1 = std::min(j0 + 1, ns - 1);
        double w = 0.0;
        if (j1 > j0)
            w = std::clamp((t - t_slices[j0]) / (t_slices[j1] - t_slices[j0]), 0.0, 1.0);

        auto sample = [&](const std::vector<double>& g) {
            const double fx = (s - b.lo.x) / b.width() * n1;
            const double fl = std::clamp((lambda + 1.0) / 2.0, 0.0, 1.0) * (nl - 1);
            const int i0 = std::min(static_cast<int>(fx), n1 - 1);
            const int i1 = (i0 + 1) % n1;
            const int l0 = std::min(static_cast<int>(fl), nl - 2);
            const int l1 = l0 + 1;
            const double ax = fx - i0, al = fl - l0;
            return (1 - ax) * (1 - al) * g[static_cast<std::size_t>(l0) * n1 + i0] +
                   ax * (1 - al) * g[static_cast<std::size_t>(l0) * n1 + i1] +
                   (1 - ax) * al * g[static_cast<std::size_t>(l1) * n1 + i0] +
                   ax * al * g[static_cast<std::size_t>(l1) * n1 + i1];
        };
        const double g0 = sample(gamma[j0]);
        if (j1 == j0 || w == 0.0) return g0;
        return (1.0 - w) * g0 + w * sample(gamma[j1]);
    }
};

SubsolutionField SubsolutionField::flat(double c, double T_end) {
    SubsolutionField f;
    f.geom_ = MixingGeometry(c, T_end);
    return f;
}

double SubsolutionField::lambda_at(const Vec2& x, double t) const {
    const double lam = (x.y - geom_.interface_height(x.x, t)) / (geom_.c * t);
    return std::clamp(lam, -1.0, 1.0);
}

bool SubsolutionField::inside_mixing_zone(const Vec2& x, double t) const {
    const double lam = (x.y - geom_.interface_height(x.x, t)) / (geom_.c * t);
    return std::abs(lam) < 1.0;
}

StateZ SubsolutionField::eval(const Vec2& x, double t) const {
    if (!(t > 0.0)) throw InvalidTime("subsolution evaluation requires t > 0");
    if (!data_) return flat_subsolution(geom_.c, x, t);

    const double lambda = lambda_at(x, t);
    const Vec2 u = data_->velocity(x, t);
    StateZ z;
    z.rho = lambda;
    z.v = {2.0 * u.x, 2.0 * u.y + lambda};
    const Vec2 mv = 0.5 * lambda * z.v;
    if (std::abs(lambda) >= 1.0) {
        z.m = mv; // exact constraint outside the zone
    } else {
        const double g2 = data_->gamma2(x.x, lambda, t);
        z.m = {mv.x, mv.y + 0.5 * (1.0 - lambda * lambda) * g2};
    }
    return z;
}

SubsolutionField SubsolutionField::sampled(MixingGeometry geom, const HullParams& params,
                                           const SampledFieldOptions& opts,
                                           SampledBuildReport* report) {
    if (!(opts.t_lo > 0.0 && opts.t_hi >= opts.t_lo))
        throw InvalidTime("sampled subsolution needs 0 < t_lo <= t_hi");

    auto data = std::make_shared<SampledData>();
    data->opts = opts;
    data->params = params;
    const int n_time = std::max(2, opts.n_time);
    for (int j = 0; j < n_time; ++j)
        data->t_slices.push_back(opts.t_lo +
                                 (opts.t_hi - opts.t_lo) * j / (n_time - 1.0));

    const int n1 = opts.bs_n1, n2 = opts.bs_n2;
    const Box2& box = opts.bs_box;

    // Velocity grids, one spectral solve per slice.
    for (double t : data->t_slices) {
        std::vector<double> rho(static_cast<std::size_t>(n2 + 1) * n1);
        for (int j = 0; j <= n2; ++j) {
            const double y = box.lo.y + box.height() * j / n2;
            for (int i = 0; i < n1; ++i) {
                const double x = box.lo.x + box.width() * i / n1;
                const double lam =
                    (y - geom.interface_height(x, t)) / (geom.c * t);
                rho[static_cast<std::size_t>(j) * n1 + i] = std::clamp(lam, -1.0, 1.0);
            }
        }
        data->bs.push_back(biot_savart_velocity(rho, n1, n2, box));
    }

    // Column-integrated flux correction gamma per slice.
    int clamped = 0;
    const int nl = opts.n_lambda;
    for (std::size_t sl = 0; sl < data->t_slices.size(); ++sl) {
        const double t = data->t_slices[sl];
        std::vector<double> g(static_cast<std::size_t>(nl) * n1, 0.0);

        // Derivatives of the interior closure extend smoothly across the
        // zone edge, so the column integrand uses the unclamped density.
        auto rho_raw = [&](const Vec2& p, double tt) {
            return (p.y - geom.interface_height(p.x, tt)) / (geom.c * tt);
        };
        auto flux_half_rho_v = [&](const Vec2& p) -> Vec2 {
            const double r = rho_raw(p, t);
            const Vec2 u = data->velocity(p, t);
            return {r * u.x, r * (u.y + 0.5 * r)};
        };

        const double hx = box.width() / n1 * 0.5;
        const double ht = 1e-5 * std::max(1.0, t);
        for (int i = 0; i < n1; ++i) {
            const double s = box.lo.x + box.width() * i / n1;
            double accum = 0.0;
            double prev_R = 0.0;
            for (int l = 0; l < nl; ++l) {
                const double lam = -1.0 + 2.0 * l / (nl - 1.0);
                const Vec2 p = xmap(geom, s, lam, t);
                const double dt_rho =
                    (rho_raw(p, t + ht) - rho_raw(p, t - ht)) / (2.0 * ht);
                const double d1 =
                    (flux_half_rho_v({p.x + hx, p.y}).x - flux_half_rho_v({p.x - hx, p.y}).x) /
                    (2.0 * hx);
                const double d2 =
                    (flux_half_rho_v({p.x, p.y + hx}).y - flux_half_rho_v({p.x, p.y - hx}).y) /
                    (2.0 * hx);
                const double R = -(dt_rho + d1 + d2);
                if (l > 0) {
                    const double dlam = 2.0 / (nl - 1.0);
                    accum += 0.5 * (R + prev_R) * (geom.c * t) * dlam;
                }
                prev_R = R;
                const double denom = 1.0 - lam * lam;
                double g2;
                if (denom < 1e-6) {
                    g2 = 0.0; // overwritten from the neighbor below
                } else {
                    g2 = 2.0 * accum / denom;
                    if (std::abs(g2) > opts.gamma_clamp) {
                        g2 = std::copysign(opts.gamma_clamp, g2);
                        ++clamped;
                    }
                }
                g[static_cast<std::size_t>(l) * n1 + i] = g2;
            }
            // Endpoint columns take the neighboring interior value.
            g[static_cast<std::size_t>(0) * n1 + i] = g[static_cast<std::size_t>(1) * n1 + i];
            g[static_cast<std::size_t>(nl - 1) * n1 + i] =
                g[static_cast<std::size_t>(nl - 2) * n1 + i];
        }
        data->gamma.push_back(std::move(g));
    }

    SubsolutionField f;
    f.geom_ = std::move(geom);
    f.data_ = data;

    if (report) {
        *report = SampledBuildReport{};
        report->gamma_clamped_nodes = clamped;
        double worst = 1e300;
        double worst_resid = 0.0;
        for (double t : data->t_slices) {
            for (int j = 1; j < 24; ++j) {
                const double lam = -1.0 + 2.0 * j / 24.0;
                for (int i = 0; i < 24; ++i) {
                    const double s = box.lo.x + box.width() * (i + 0.5) / 24.0;
                    const Vec2 p = xmap(f.geom_, s, lam, t);
                    const auto cls = hull_contains(f.eval(p, t), params);
                    if (cls.min_slack < worst) {
                        worst = cls.min_slack;
                        report->worst_hull_point = p;
                        report->worst_hull_time = t;
                    }
                    if (std::abs(lam) < 0.9 && t > data->t_slices.front()) {
                        const auto rows = linear_rows_fd(
                            [&](const Vec2& q, double tt) { return f.eval(q, tt); }, p, t,
                            1e-4);
                        worst_resid = std::max(worst_resid, std::abs(rows[2]));
                    }
                }
            }
        }
        report->worst_hull_slack = worst;
        report->worst_conservation_residual = worst_resid;
        report->hull_violation = worst < 0.0;
    }
    return f;
}

} // namespace mixlab
