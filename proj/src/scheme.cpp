#include "mixlab/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "mixlab/errors.hpp"
#include "mixlab/hull.hpp"
#include "mixlab/segment.hpp"

namespace mixlab {

namespace {

std::uint64_t cube_key(int zx, int zy, int ti) {
    constexpr std::uint64_t off = 1u << 20;
    return (static_cast<std::uint64_t>(zx + off)) |
           (static_cast<std::uint64_t>(zy + off) << 21) |
           (static_cast<std::uint64_t>(ti + off) << 42);
}

// The whole space-time cube must sit inside the mixing zone, otherwise the
// atom would leak outside the perturbable region.
bool cube_inside_zone(const SubsolutionField& base, const ShiftedGrid& grid,
                      const GridCube& c) {
    const Box2 sp = grid.cube_space(c);
    const double tc = grid.cube_t_center(c);
    for (double t : {tc - 0.5 * grid.s, tc + 0.5 * grid.s}) {
        if (!(t > 0.0)) return false;
        for (const Vec2& p : {Vec2{sp.lo.x, sp.lo.y}, Vec2{sp.hi.x, sp.lo.y},
                              Vec2{sp.lo.x, sp.hi.y}, Vec2{sp.hi.x, sp.hi.y},
                              Vec2{0.5 * (sp.lo.x + sp.hi.x), sp.lo.y},
                              Vec2{0.5 * (sp.lo.x + sp.hi.x), sp.hi.y}}) {
            const double lam = (p.y - base.geometry().interface_height(p.x, t)) /
                               (base.geometry().c * t);
            if (std::abs(lam) >= 1.0 - 1e-9) return false;
        }
    }
    return true;
}

} // namespace

ShiftedGrid build_grid(const SpaceTimeWindow& window, double s, const FieldModel& field) {
    if (!(s > 0.0)) throw Error("grid side must be positive");
    ShiftedGrid grid;
    grid.s = s;
    grid.window = window;

    const double eps = 1e-12 * s;
    const Box2& sp = window.space;
    const int zx_lo = static_cast<int>(std::ceil((sp.lo.x + 0.5 * s) / s - eps));
    const int zx_hi = static_cast<int>(std::floor((sp.hi.x - 0.5 * s) / s + eps));
    const int zy_lo = static_cast<int>(std::ceil((sp.lo.y + 0.5 * s) / s - eps));
    const int zy_hi = static_cast<int>(std::floor((sp.hi.y - 0.5 * s) / s + eps));

    for (int zx = zx_lo; zx <= zx_hi; ++zx) {
        for (int zy = zy_lo; zy <= zy_hi; ++zy) {
            const int parity = ShiftedGrid::parity_of(zx, zy);
            // centers s(i + parity/2) with the cube inside [t0 - s, t1 + s]
            const double lo = (window.t0 - 0.5 * s) / s - 0.5 * parity;
            const double hi = (window.t1 + 0.5 * s) / s - 0.5 * parity;
            const int ti_lo = static_cast<int>(std::ceil(lo - eps / s));
            const int ti_hi = static_cast<int>(std::floor(hi + eps / s));
            for (int ti = ti_lo; ti <= ti_hi; ++ti) {
                GridCube cube{zx, zy, ti, parity};
                if (!cube_inside_zone(field.base(), grid, cube)) continue;
                const StateZ zc =
                    field.eval(grid.cube_center(cube), grid.cube_t_center(cube));
                if (!hull_contains(zc, field.params()).strictly_inside()) continue;
                grid.cubes.push_back(cube);
            }
        }
    }
    if (grid.cubes.empty())
        throw EmptyGrid("no admissible cube at side " + std::to_string(s));
    return grid;
}

// ---------------------------------------------------------------------------

Discretization::Discretization(const ShiftedGrid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    for (std::size_t i = 0; i < grid_.cubes.size(); ++i) {
        const GridCube& c = grid_.cubes[i];
        index_.emplace(cube_key(c.zx, c.zy, c.ti), static_cast<std::uint32_t>(i));
    }
}

double Discretization::eval(const Vec2& x, double t) const {
    const double s = grid_.s;
    const int zx = static_cast<int>(std::lround(x.x / s));
    const int zy = static_cast<int>(std::lround(x.y / s));
    const int p = ShiftedGrid::parity_of(zx, zy);
    const int ti = static_cast<int>(std::lround(t / s - 0.5 * p));
    const auto it = index_.find(cube_key(zx, zy, ti));
    if (it == index_.end()) return 0.0;
    const GridCube& c = grid_.cubes[it->second];
    if (std::abs(x.x - s * c.zx) > 0.375 * s) return 0.0;
    if (std::abs(x.y - s * c.zy) > 0.375 * s) return 0.0;
    if (std::abs(t - grid_.cube_t_center(c)) > 0.375 * s) return 0.0;
    return values_[it->second];
}

double Discretization::inner_integral(int parity, double t) const {
    const double cell = 0.75 * grid_.s;
    double sum = 0.0;
    for (std::size_t i = 0; i < grid_.cubes.size(); ++i) {
        const GridCube& c = grid_.cubes[i];
        if (c.parity != parity) continue;
        if (std::abs(t - grid_.cube_t_center(c)) > 0.375 * grid_.s) continue;
        sum += values_[i] * cell * cell;
    }
    return sum;
}

Discretization discretize(const FieldModel& field, const ShiftedGrid& grid,
                          const std::function<double(const StateZ&)>& f) {
    std::vector<double> values;
    values.reserve(grid.cubes.size());
    for (const GridCube& c : grid.cubes)
        values.push_back(f(field.eval(grid.cube_center(c), grid.cube_t_center(c))));
    return {grid, std::move(values)};
}

// ---------------------------------------------------------------------------

namespace {

int auto_gain_points(double n_osc) {
    const int n = static_cast<int>(4.0 * 0.75 * n_osc) + 13;
    return std::clamp(n | 1, 37, 201);
}

struct CubeTrial {
    bool membership = false;
    double gain = 0.0;
};

CubeTrial try_atom(const FieldModel& field, const ShiftedGrid& grid, const GridCube& cube,
                   const WaveAtom& atom, const KPolicy& policy, double n_osc) {
    CubeTrial trial;
    const Vec2 ctr = grid.cube_center(cube);
    const double tc = grid.cube_t_center(cube);
    const double s = grid.s;
    const double x0 = ctr.x - 0.5 * s, y0 = ctr.y - 0.5 * s, t0 = tc - 0.5 * s;

    // (a) sampled hull membership of field + atom across the full cube.
    // Besides the actual atom value, the whole sampled phase range of the
    // oscillation is checked: the wave sweeps z(y) + mu psi(y) zbar over
    // mu in [-1, 1], so extremes between lattice points are covered.
    const int L = policy.membership_lattice;
    const double need =
        0.5 * field.params().margin_delta - 1e-12 * (1.0 + field.params().M);
    trial.membership = true;
    for (int i = 0; i < L && trial.membership; ++i) {
        for (int j = 0; j < L && trial.membership; ++j) {
            for (int l = 0; l < L && trial.membership; ++l) {
                const Vec2 p{x0 + s * (i + 0.5) / L, y0 + s * (j + 0.5) / L};
                const double t = t0 + s * (l + 0.5) / L;
                const StateZ z = field.eval(p, t);
                const StateZ za = z + atom_eval(atom, field.profile(), p, t);
                if (hull_contains(za, field.params()).min_slack < need) {
                    trial.membership = false;
                    break;
                }
                const double psi =
                    cutoff_eval(atom.cutoff, (p.x - atom.center.x) / s + 0.5).c *
                    cutoff_eval(atom.cutoff, (p.y - atom.center.y) / s + 0.5).c *
                    cutoff_eval(atom.cutoff, (t - atom.t_center) / atom.side_time + 0.5).c;
                for (double mu : {-1.0, -0.5, 0.5, 1.0}) {
                    const StateZ ze = z + (mu * psi) * atom.direction;
                    if (hull_contains(ze, field.params()).min_slack < need) {
                        trial.membership = false;
                        break;
                    }
                }
            }
        }
    }
    if (!trial.membership) return trial;

    // (b) measured gauge gain over the inner cube (space-time midpoint rule)
    const int n = (policy.gain_quadrature > 0) ? policy.gain_quadrature
                                               : auto_gain_points(n_osc);
    const double inner = 0.75 * s;
    const double ix0 = ctr.x - 0.5 * inner, iy0 = ctr.y - 0.5 * inner,
                 it0 = tc - 0.5 * inner;
    double sum = 0.0;
    for (int l = 0; l < n; ++l) {
        const double t = it0 + inner * (l + 0.5) / n;
        for (int j = 0; j < n; ++j) {
            const Vec2 base_p{0.0, iy0 + inner * (j + 0.5) / n};
            for (int i = 0; i < n; ++i) {
                const Vec2 p{ix0 + inner * (i + 0.5) / n, base_p.y};
                const StateZ z = field.eval(p, t);
                const StateZ za = z + atom_eval(atom, field.profile(), p, t);
                sum += gauge_D(z) - gauge_D(za);
            }
        }
    }
    const double cell = inner / n;
    trial.gain = sum * cell * cell * cell;
    return trial;
}

} // namespace

std::pair<FieldModel, PassReport> perturbation_pass(const FieldModel& field,
                                                    const ShiftedGrid& grid,
                                                    const KPolicy& policy) {
    PassReport report;
    report.cubes_total = static_cast<int>(grid.cubes.size());
    const JResult j_before =
        relaxation_error_J(field, grid.window, policy.j_resolution, policy.j_time_slices);
    report.J_before = j_before.value;

    std::vector<WaveAtom> accepted;
    const double c_gamma = field.profile().c_gamma;
    const double inner_vol = std::pow(0.75 * grid.s, 3);

    for (const GridCube& cube : grid.cubes) {
        const Vec2 ctr = grid.cube_center(cube);
        const double tc = grid.cube_t_center(cube);
        SegmentResult seg;
        try {
            seg = lambda_segment(field.eval(ctr, tc), field.params());
        } catch (const Error& e) {
            ++report.cubes_skipped;
            report.skip_reasons.push_back(e.what());
            continue;
        }
        if (seg.lambda_max < 1e-8) {
            ++report.cubes_skipped;
            report.skip_reasons.push_back("segment too short");
            continue;
        }
        const StateZ zbar = seg.lambda_max * seg.direction;
        WaveAtom atom;
        atom.center = ctr;
        atom.t_center = tc;
        atom.side_space = grid.s;
        atom.side_time = grid.s;
        atom.parity = static_cast<std::uint8_t>(cube.parity);
        atom.direction = zbar;
        atom.freq = solve_direction(zbar, 1e-9);
        if (atom.is_null()) {
            ++report.cubes_skipped;
            report.skip_reasons.push_back("null direction");
            continue;
        }

        const double predicted = c_gamma * gauge_H(zbar) * inner_vol;
        double n_osc = policy.k0_oscillations;
        bool placed = false;
        CubeTrial last;
        while (true) {
            atom.k = static_cast<std::uint32_t>(
                std::max<long>(1, std::lround(n_osc / grid.s)));
            last = try_atom(field, grid, cube, atom, policy, n_osc);
            if (last.membership && last.gain >= policy.gain_fraction * predicted) {
                placed = true;
                break;
            }
            if (n_osc * 2.0 > policy.cap_oscillations) {
                // Keep the atom at the cap only if it is hull-safe.
                if (last.membership) {
                    placed = true;
                    ++report.cap_warnings;
                }
                break;
            }
            n_osc *= 2.0;
        }

        if (!placed) {
            ++report.cubes_skipped;
            report.skip_reasons.push_back("hull membership failed up to the oscillation cap");
            continue;
        }
        accepted.push_back(atom);
        ++report.cubes_perturbed;
        report.predicted_gain += predicted;
        report.k_histogram[static_cast<int>(atom.k)] += 1;
        report.gain_ratios.push_back(predicted > 0.0 ? last.gain / predicted : 0.0);
    }

    FieldModel next = field;
    if (!accepted.empty()) next.append_pass(grid.s, std::move(accepted));
    report.J_after =
        relaxation_error_J(next, grid.window, policy.j_resolution, policy.j_time_slices).value;
    return {std::move(next), std::move(report)};
}

JResult relaxation_error_J(const FieldModel& field, const SpaceTimeWindow& window,
                           int resolution, int time_slices) {
    if (resolution < 16) throw Error("J quadrature needs >= 16 points per side");
    time_slices = std::max(32, time_slices);

    JResult best;
    const double dx = window.space.width() / resolution;
    const double dy = window.space.height() / resolution;
    for (int l = 0; l < time_slices; ++l) {
        const double t =
            window.t0 + (window.t1 - window.t0) * l / (time_slices - 1.0);
        double sum = 0.0;
        for (int j = 0; j < resolution; ++j) {
            const double y = window.space.lo.y + (j + 0.5) * dy;
            for (int i = 0; i < resolution; ++i) {
                const Vec2 p{window.space.lo.x + (i + 0.5) * dx, y};
                sum += gauge_D(field.eval(p, t));
            }
        }
        const double integral = sum * dx * dy;
        if (integral > best.value) {
            best.value = integral;
            best.argmax_t = t;
        }
    }
    return best;
}

std::pair<FieldModel, RunReport> run_scheme(const RunConfig& config) {
    HullParams params{config.M, config.margin_delta};
    SubsolutionField base =
        config.interface_path.empty()
            ? SubsolutionField::flat(config.speed_c, config.window.t1)
            : SubsolutionField::sampled(
                  MixingGeometry(config.speed_c, config.window.t1,
                                 load_interface_table_file(config.interface_path)),
                  params,
                  SampledFieldOptions{
                      {{config.window.space.lo.x, config.window.space.lo.y - 1.0},
                       {config.window.space.hi.x, config.window.space.hi.y + 1.0}},
                      128, 128, 129, 9, 0.5 * config.window.t0, config.window.t1, 0.99});

    FieldModel field(std::move(base), params, Profile::by_name(config.profile_name));

    KPolicy policy;
    policy.k0_oscillations = config.k0;
    policy.cap_oscillations = config.k_cap;
    policy.gain_fraction = config.gain_fraction;
    policy.j_resolution = config.quad_resolution;
    policy.j_time_slices = config.time_slices;

    RunReport report;
    report.J_initial =
        relaxation_error_J(field, config.window, config.quad_resolution, config.time_slices)
            .value;
    report.J_final = report.J_initial;

    double s = config.s_initial;
    int passes = 0;
    while (passes < config.passes_max && s >= config.s_min) {
        ShiftedGrid grid;
        try {
            grid = build_grid(config.window, s, field);
        } catch (const EmptyGrid&) {
            s *= 0.5; // normal termination of the side schedule
            continue;
        }
        auto [next, pass] = perturbation_pass(field, grid, policy);
        if (pass.cubes_perturbed == 0) {
            s *= 0.5;
            continue;
        }
        field = std::move(next);
        report.pass_sides.push_back(s);
        const double drop = (pass.J_before - pass.J_after) / std::max(pass.J_before, 1e-300);
        report.passes.push_back(std::move(pass));
        ++passes;
        if (drop < config.stall_fraction) s *= 0.5;
    }
    report.J_final =
        relaxation_error_J(field, config.window, config.quad_resolution, config.time_slices)
            .value;
    return {std::move(field), std::move(report)};
}

} // namespace mixlab
