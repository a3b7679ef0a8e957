#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "mixlab/biot_savart.hpp"
#include "mixlab/box.hpp"
#include "mixlab/interface.hpp"
#include "mixlab/state.hpp"

namespace mixlab {

/// Mixing-zone geometry: the zone at time t is the image of R x (-1, 1)
/// under (s, lambda) -> (s, f(s, t) + c lambda t). The admissible growth
/// speeds are 0 < c < 2.
struct MixingGeometry {
    double c = 1.0;
    double T_end = 1.0;
    std::optional<SampledInterface> interface; // flat when absent

    MixingGeometry() = default;
    MixingGeometry(double c_, double T_end_,
                   std::optional<SampledInterface> interface_ = std::nullopt);

    bool flat() const { return !interface.has_value(); }
    double interface_height(double s, double t) const;
};

/// Forward map of the mixing-zone parametrization; the Jacobian is c t.
Vec2 xmap(const MixingGeometry& geom, double s, double lambda, double t);

/// Inverse map; throws OutsideMixingZone when x is not in the closure of
/// the zone at time t (tolerance 1e-12 on |lambda|).
std::pair<double, double> xmap_inverse(const MixingGeometry& geom, const Vec2& x, double t);

/// Closed-form coarse-grained state for the flat interface: linear density
/// profile across the zone, zero transformed velocity deviation, and the
/// flux component integrating the conservation law with continuous match
/// at the zone edges. Throws InvalidTime / InvalidSpeed.
StateZ flat_subsolution(double c, const Vec2& x, double t);

struct SampledFieldOptions {
    Box2 bs_box;          // periodic-in-x1 solve box (should pad the zone)
    int bs_n1 = 128;      // periodic samples in x1
    int bs_n2 = 128;      // cells in x2
    int n_lambda = 129;   // gamma column resolution
    int n_time = 9;       // time slices over [t_lo, t_hi]
    double t_lo = 0.1;
    double t_hi = 1.0;
    double gamma_clamp = 0.99;
};

/// Build diagnostics for the sampled construction; the closed-form flat
/// field is the only certified configuration, so violations are reported
/// rather than fatal.
struct SampledBuildReport {
    double worst_hull_slack = 0.0;
    Vec2 worst_hull_point;
    double worst_hull_time = 0.0;
    double worst_conservation_residual = 0.0;
    int gamma_clamped_nodes = 0;
    bool hull_violation = false;
};

/// Evaluable coarse-grained field z(x, t): closed form for the flat
/// interface, grid-backed (velocity from the spectral solve, flux from the
/// column-integrated ansatz) for sampled interfaces.
class SubsolutionField {
  public:
    static SubsolutionField flat(double c, double T_end = 1.0);
    static SubsolutionField sampled(MixingGeometry geom, const HullParams& params,
                                    const SampledFieldOptions& opts,
                                    SampledBuildReport* report = nullptr);

    StateZ eval(const Vec2& x, double t) const;
    const MixingGeometry& geometry() const { return geom_; }
    bool flat_closed_form() const { return data_ == nullptr; }

    /// lambda coordinate of x at time t, clamped to [-1, 1].
    double lambda_at(const Vec2& x, double t) const;
    bool inside_mixing_zone(const Vec2& x, double t) const;

  private:
    struct SampledData;
    MixingGeometry geom_;
    std::shared_ptr<const SampledData> data_;
};

} // namespace mixlab
