#include "mixlab/wave.hpp"

#include <cmath>

#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/linear_rows.hpp"

namespace mixlab {

namespace {

// Quintic smoothstep and derivatives: C^2 at both ends.
inline double s5(double w) { return w * w * w * (10.0 + w * (-15.0 + 6.0 * w)); }
inline double s5p(double w) {
    const double a = w * (1.0 - w);
    return 30.0 * a * a;
}
inline double s5pp(double w) { return 60.0 * w * (1.0 - w) * (1.0 - 2.0 * w); }

inline double sign_pos(double x) { return (x >= 0.0) ? 1.0 : -1.0; }

} // namespace

CutoffValue cutoff_eval(const CutoffSpec& spec, double u) {
    if (u <= 0.0 || u >= 1.0) return {};
    if (u < spec.lo) {
        const double w = u / spec.lo;
        return {s5(w), s5p(w) / spec.lo, s5pp(w) / (spec.lo * spec.lo)};
    }
    if (u > spec.hi) {
        const double r = 1.0 - spec.hi;
        const double w = (1.0 - u) / r;
        return {s5(w), -s5p(w) / r, s5pp(w) / (r * r)};
    }
    return {1.0, 0.0, 0.0};
}

WaveFrequency solve_direction(const StateZ& zbar, double cone_tol) {
    if (!in_wave_cone(zbar, cone_tol))
        throw NotInCone("direction does not satisfy |rho| = |v|");

    const double scale = 1.0 + zbar.norm();
    WaveFrequency f;
    if (std::abs(zbar.rho) <= 1e-14 * scale) {
        // Pure flux direction (0, 0, m): secondary potential only.
        const double mn = zbar.m.norm();
        if (mn <= 1e-14 * scale) return f; // null marker: b = 0
        f.zeta = {zbar.m.y / mn, -zbar.m.x / mn};
        f.xi0 = 0.0;
        f.b_coeff = mn;
        return f;
    }

    Vec2 eta = zbar.v * (1.0 / zbar.rho);
    const double en = eta.norm();
    if (en > 0.0) eta = eta * (1.0 / en);

    const double z2 = std::sqrt(std::max(0.0, (1.0 + eta.y) / 2.0));
    const double z1 = sign_pos(eta.x) * std::sqrt(std::max(0.0, (1.0 - eta.y) / 2.0));
    f.zeta = {z1, z2};

    // [ -a z1  -z2 ] (xi0)   (m1)
    // [ -a z2   z1 ] ( b ) = (m2),  determinant -a != 0.
    const double a = zbar.rho;
    f.xi0 = -(zbar.m.x * z1 + zbar.m.y * z2) / a;
    f.b_coeff = z1 * zbar.m.y - z2 * zbar.m.x;
    return f;
}

namespace {

struct PsiDerivs {
    double psi, p1, p2, pt;
    double p11, p22, p12, p1t, p2t;
};

inline PsiDerivs psi_derivs(const WaveAtom& atom, const Vec2& x, double t) {
    const double inv_s = 1.0 / atom.side_space;
    const double inv_st = 1.0 / atom.side_time;
    const CutoffValue c1 = cutoff_eval(atom.cutoff, (x.x - atom.center.x) * inv_s + 0.5);
    const CutoffValue c2 = cutoff_eval(atom.cutoff, (x.y - atom.center.y) * inv_s + 0.5);
    const CutoffValue ct = cutoff_eval(atom.cutoff, (t - atom.t_center) * inv_st + 0.5);

    const double d1 = c1.d1 * inv_s, dd1 = c1.d2 * inv_s * inv_s;
    const double d2 = c2.d1 * inv_s, dd2 = c2.d2 * inv_s * inv_s;
    const double dt = ct.d1 * inv_st;

    PsiDerivs p;
    p.psi = c1.c * c2.c * ct.c;
    p.p1 = d1 * c2.c * ct.c;
    p.p2 = c1.c * d2 * ct.c;
    p.pt = c1.c * c2.c * dt;
    p.p11 = dd1 * c2.c * ct.c;
    p.p22 = c1.c * dd2 * ct.c;
    p.p12 = d1 * d2 * ct.c;
    p.p1t = d1 * c2.c * dt;
    p.p2t = c1.c * d2 * dt;
    return p;
}

} // namespace

double atom_potential_phi(const WaveAtom& atom, const Profile& profile, const Vec2& x, double t) {
    if (!atom.contains(x, t)) return 0.0;
    const double k = static_cast<double>(atom.k);
    const double tau = k * (atom.freq.zeta.dot(x) + atom.freq.xi0 * t);
    return psi_derivs(atom, x, t).psi * (atom.direction.rho / (k * k)) * profile.H2(tau);
}

double atom_potential_varphi(const WaveAtom& atom, const Profile& profile, const Vec2& x,
                             double t) {
    if (!atom.contains(x, t)) return 0.0;
    const double k = static_cast<double>(atom.k);
    const double tau = k * (atom.freq.zeta.dot(x) + atom.freq.xi0 * t);
    return psi_derivs(atom, x, t).psi * (atom.freq.b_coeff / k) * profile.H1(tau);
}

StateZ atom_eval(const WaveAtom& atom, const Profile& profile, const Vec2& x, double t) {
    if (!atom.contains(x, t)) return {};
    if (atom.is_null()) return {};

    const double k = static_cast<double>(atom.k);
    const double x1 = atom.freq.zeta.x, x2 = atom.freq.zeta.y, xt = atom.freq.xi0;
    const double tau = k * (x1 * x.x + x2 * x.y + xt * t);

    const double a = atom.direction.rho;
    const double b = atom.freq.b_coeff;
    const double H2v = profile.H2(tau), H1v = profile.H1(tau), hv = profile.h(tau);

    // Primary potential and partials: Phi = (a/k^2) H2(tau).
    const double Phi = a / (k * k) * H2v;
    const double Phi_1 = a / k * x1 * H1v, Phi_2 = a / k * x2 * H1v, Phi_t = a / k * xt * H1v;
    const double Phi_11 = a * x1 * x1 * hv, Phi_22 = a * x2 * x2 * hv;
    const double Phi_12 = a * x1 * x2 * hv;
    const double Phi_t1 = a * xt * x1 * hv, Phi_t2 = a * xt * x2 * hv;

    // Secondary potential: Psi = (b/k) H1(tau).
    const double Psi = b / k * H1v;
    const double Psi_1 = b * x1 * hv, Psi_2 = b * x2 * hv;

    const PsiDerivs p = psi_derivs(atom, x, t);

    const double phi_11 = p.p11 * Phi + 2.0 * p.p1 * Phi_1 + p.psi * Phi_11;
    const double phi_22 = p.p22 * Phi + 2.0 * p.p2 * Phi_2 + p.psi * Phi_22;
    const double phi_12 = p.p12 * Phi + p.p1 * Phi_2 + p.p2 * Phi_1 + p.psi * Phi_12;
    const double phi_t1 = p.p1t * Phi + p.pt * Phi_1 + p.p1 * Phi_t + p.psi * Phi_t1;
    const double phi_t2 = p.p2t * Phi + p.pt * Phi_2 + p.p2 * Phi_t + p.psi * Phi_t2;
    const double vp_1 = p.p1 * Psi + p.psi * Psi_1;
    const double vp_2 = p.p2 * Psi + p.psi * Psi_2;

    StateZ out;
    out.rho = phi_11 + phi_22;
    out.v = {2.0 * phi_12, phi_22 - phi_11};
    out.m = {-phi_t1 - vp_2, -phi_t2 + vp_1};
    return out;
}

std::array<double, 3> atom_linear_residual(const WaveAtom& atom, const Profile& profile,
                                           double grid_spacing) {
    if (grid_spacing <= 0.0) throw Error("grid_spacing must be positive");
    auto field = [&](const Vec2& x, double t) { return atom_eval(atom, profile, x, t); };

    std::array<double, 3> worst{0.0, 0.0, 0.0};
    const int n = 5;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                const Vec2 x{atom.center.x + atom.side_space * ((i + 1.0) / (n + 1.0) - 0.5),
                             atom.center.y + atom.side_space * ((j + 1.0) / (n + 1.0) - 0.5)};
                const double t =
                    atom.t_center + atom.side_time * ((l + 1.0) / (n + 1.0) - 0.5);
                const auto rows = linear_rows_fd(field, x, t, grid_spacing);
                for (int r = 0; r < 3; ++r)
                    worst[r] = std::max(worst[r], std::abs(rows[r]));
            }
        }
    }
    return worst;
}

} // namespace mixlab
