#pragma once

#include <functional>

#include "mixlab/box.hpp"
#include "mixlab/profile.hpp"
#include "mixlab/wave.hpp"

namespace mixlab {

/// Quadrature of the oscillation average
///   integral over the box of g(x) A(h(k (zeta . x + xi0 t))) dx
/// with a midpoint rule whose resolution tracks k.
double oscillation_average(const Profile& profile, const std::function<double(double)>& A,
                           const std::function<double(const Vec2&)>& g, const Box2& box,
                           const WaveFrequency& freq, int k, double t, int resolution = 0);

/// Predicted limit: integral of g over the box times the torus average of
/// A(h(.)).
double oscillation_limit(const Profile& profile, const std::function<double(double)>& A,
                         const std::function<double(const Vec2&)>& g, const Box2& box,
                         int resolution = 512);

} // namespace mixlab
