#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mixlab/field.hpp"
#include "mixlab/grid.hpp"

namespace mixlab {

/// Enumerates the parity-shifted grid over window x [t0 - s, t1 + s],
/// keeping cubes whose closure stays inside the window strip and inside the
/// mixing zone, and whose center state is strictly interior. Throws
/// EmptyGrid when no cube qualifies (s too large for the window).
ShiftedGrid build_grid(const SpaceTimeWindow& window, double s, const FieldModel& field);

/// Piecewise-constant sampling of f(z(.)) on the inner cubes of the grid:
/// the value at the cube center on each inner cube, zero elsewhere.
class Discretization {
  public:
    Discretization(const ShiftedGrid& grid, std::vector<double> values);

    double eval(const Vec2& x, double t) const;
    /// Spatial integral over the parity-b inner squares live at time t
    /// (cell value times (3s/4)^2 summed over cubes whose inner time window
    /// contains t).
    double inner_integral(int parity, double t) const;
    const std::vector<double>& values() const { return values_; }

  private:
    ShiftedGrid grid_;
    std::vector<double> values_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

Discretization discretize(const FieldModel& field, const ShiftedGrid& grid,
                          const std::function<double(const StateZ&)>& f);

struct KPolicy {
    double k0_oscillations = 8.0;    // initial oscillations per cube side
    double cap_oscillations = 1024.0;
    double gain_fraction = 0.5;      // required fraction of the predicted gain
    int membership_lattice = 5;      // per-axis sample count for the hull check
    int gain_quadrature = 0;         // per-axis points; 0 = automatic
    int j_resolution = 256;          // quadrature of the pass-level J bookkeeping
    int j_time_slices = 32;
};

struct PassReport {
    double J_before = 0.0;
    double J_after = 0.0;
    double predicted_gain = 0.0; // sum of c_gamma H(zbar) |inner cube|
    int cubes_total = 0;
    int cubes_perturbed = 0;
    int cubes_skipped = 0;
    int cap_warnings = 0; // atoms kept at the oscillation cap with gain shortfall
    std::map<int, int> k_histogram;
    std::vector<double> gain_ratios; // measured / predicted, perturbed cubes
    std::vector<std::string> skip_reasons;
};

/// One perturbation sweep: per cube, extract the admissible segment at the
/// center state, synthesize the localized wave, choose the oscillation count
/// by the doubling policy, and append all accepted atoms as one pass.
std::pair<FieldModel, PassReport> perturbation_pass(const FieldModel& field,
                                                    const ShiftedGrid& grid,
                                                    const KPolicy& policy);

struct JResult {
    double value = 0.0;
    double argmax_t = 0.0;
};

/// Relaxation error J = max over a time lattice (>= 32 slices) of the
/// spatial quadrature of 1 - rho^2 over the window.
JResult relaxation_error_J(const FieldModel& field, const SpaceTimeWindow& window,
                           int resolution, int time_slices = 32);

struct RunConfig {
    double speed_c = 1.0;
    double M = 5.0;
    double margin_delta = 0.05;
    SpaceTimeWindow window{{{-1.0, -1.0}, {1.0, 1.0}}, 0.5, 1.0};
    double s_initial = 0.125;
    double s_min = 0.015625;
    int passes_max = 3;
    double k0 = 8.0;
    double k_cap = 1024.0;
    double gain_fraction = 0.5;
    int quad_resolution = 256;
    int time_slices = 32;
    double stall_fraction = 0.02; // relative J drop below which s is halved
    std::string profile_name = "cosine";
    std::string interface_path; // empty = flat base
};

struct RunReport {
    double J_initial = 0.0;
    double J_final = 0.0;
    std::vector<PassReport> passes;
    std::vector<double> pass_sides;
};

/// Deterministic driver: repeated passes over the window, halving the cube
/// side when the relative J drop stalls or a sweep produces no atoms.
/// Exhaustion of the side schedule is normal termination.
std::pair<FieldModel, RunReport> run_scheme(const RunConfig& config);

} // namespace mixlab
