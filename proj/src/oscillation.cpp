#include "mixlab/oscillation.hpp"

#include <algorithm>
#include <cmath>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

double torus_average(const Profile& profile, const std::function<double(double)>& A) {
    const int n = 8192;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) / n;
        const double m = (i + 0.5) / n;
        const double b = static_cast<double>(i + 1) / n;
        sum += (A(profile.h(a)) + 4.0 * A(profile.h(m)) + A(profile.h(b))) / (6.0 * n);
    }
    return sum;
}

} // namespace

double oscillation_average(const Profile& profile, const std::function<double(double)>& A,
                           const std::function<double(const Vec2&)>& g, const Box2& box,
                           const WaveFrequency& freq, int k, double t, int resolution) {
    if (k < 1) throw Error("oscillation count k must be >= 1");
    int n = resolution;
    if (n <= 0) {
        // enough points per period plus an incommensurate offset against
        // aliasing of the midpoint rule
        n = std::max(257, 8 * k + 33);
    }
    const double dx = box.width() / n;
    const double dy = box.height() / n;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double y = box.lo.y + (j + 0.5) * dy;
        double row = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = box.lo.x + (i + 0.5) * dx;
            const double tau = k * (freq.zeta.x * x + freq.zeta.y * y + freq.xi0 * t);
            row += g({x, y}) * A(profile.h(tau));
        }
        sum += row;
    }
    return sum * dx * dy;
}

double oscillation_limit(const Profile& profile, const std::function<double(double)>& A,
                         const std::function<double(const Vec2&)>& g, const Box2& box,
                         int resolution) {
    const int n = resolution;
    const double dx = box.width() / n;
    const double dy = box.height() / n;
    double gsum = 0.0;
    for (int j = 0; j < n; ++j) {
        const double y = box.lo.y + (j + 0.5) * dy;
        for (int i = 0; i < n; ++i) {
            gsum += g({box.lo.x + (i + 0.5) * dx, y});
        }
    }
    return gsum * dx * dy * torus_average(profile, A);
}

} // namespace mixlab
