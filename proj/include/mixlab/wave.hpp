#pragma once

#include <array>
#include <cstdint>

#include "mixlab/profile.hpp"
#include "mixlab/state.hpp"

namespace mixlab {

/// Frequency data of one plane wave: unit spatial direction zeta, temporal
/// component xi0 and the coefficient b of the secondary potential.
/// Excluded frequencies of the form (0, xi0) cannot occur since |zeta| = 1.
struct WaveFrequency {
    Vec2 zeta{1.0, 0.0};
    double xi0 = 0.0;
    double b_coeff = 0.0;
};

/// C^2 tensor-product cutoff: quintic-smoothstep ramps on [0, lo] and
/// [hi, 1], identically 1 on [lo, hi], zero outside the unit interval.
struct CutoffSpec {
    double lo = 0.125;
    double hi = 0.875;
};

struct CutoffValue {
    double c = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

CutoffValue cutoff_eval(const CutoffSpec& spec, double u);

/// One localized plane-wave perturbation supported in a space-time box.
struct WaveAtom {
    Vec2 center;
    double t_center = 0.0;
    double side_space = 1.0;
    double side_time = 1.0;
    std::uint8_t parity = 0;
    StateZ direction; // full-amplitude wave-cone direction
    WaveFrequency freq;
    std::uint32_t k = 1;
    CutoffSpec cutoff;

    bool is_null() const { return direction.rho == 0.0 && freq.b_coeff == 0.0; }
    bool contains(const Vec2& x, double t) const {
        return std::abs(x.x - center.x) < 0.5 * side_space &&
               std::abs(x.y - center.y) < 0.5 * side_space &&
               std::abs(t - t_center) < 0.5 * side_time;
    }
};

/// Solves for the wave frequency carrying a given cone direction.
///
/// For rho != 0 the spatial direction comes from v/rho via half-angle
/// formulas (sign of zeta_1 chosen so that 2 zeta_1 zeta_2 = eta_1 for all
/// eta), and (xi0, b) solve a nonsingular 2x2 system against m. For rho = 0
/// the direction is (0, 0, m) and a pure secondary wave with b = |m| is
/// returned (null marker when m = 0). Throws NotInCone.
WaveFrequency solve_direction(const StateZ& zbar, double cone_tol = 1e-9);

/// Scalar potentials of the atom (the full cutoff-weighted values).
double atom_potential_phi(const WaveAtom& atom, const Profile& profile, const Vec2& x, double t);
double atom_potential_varphi(const WaveAtom& atom, const Profile& profile, const Vec2& x, double t);

/// Closed-form evaluation of the perturbation field carried by the atom.
/// Zero outside the atom's box.
StateZ atom_eval(const WaveAtom& atom, const Profile& profile, const Vec2& x, double t);

/// Max-norm centered-difference residuals of the three linear rows
/// (the two stationary rows and the conservation row) over a deterministic
/// lattice inside the cube.
std::array<double, 3> atom_linear_residual(const WaveAtom& atom, const Profile& profile,
                                           double grid_spacing);

} // namespace mixlab
