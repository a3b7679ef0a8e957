#include "mixlab/profile.hpp"

#include <cmath>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double quad_c_gamma(const std::function<double(double)>& h) {
    // Composite Simpson on the torus; integrand is smooth and periodic.
    const int n = 4096;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = static_cast<double>(i) / n;
        const double b = static_cast<double>(i + 1) / n;
        const double fa = h(a), fm = h(0.5 * (a + b)), fb = h(b);
        sum += (fa + 4.0 * fm + fb) * (b - a) / 6.0;
    }
    return sum;
}

} // namespace

Profile Profile::cosine() {
    Profile p;
    p.name = "cosine";
    p.H2 = [](double t) { return -std::cos(kTwoPi * t) / (kTwoPi * kTwoPi); };
    p.H1 = [](double t) { return std::sin(kTwoPi * t) / kTwoPi; };
    p.h = [](double t) { return std::cos(kTwoPi * t); };
    p.h_prime = [](double t) { return -kTwoPi * std::sin(kTwoPi * t); };
    p.c_gamma = 0.5;
    p.sup_h = 1.0;
    return p;
}

Profile Profile::square3() {
    // h0 = sin + sin(3.)/3 + sin(5.)/5 peaks at 1.0495573...; rescale so
    // sup |h| = 1. H2 antiderivatives pick up 1/(2 pi j)^2 factors.
    const double peak = 1.0495573128388410;
    const double s = 1.0 / peak;
    Profile p;
    p.name = "square3";
    p.h = [s](double t) {
        const double a = kTwoPi * t;
        return s * (std::sin(a) + std::sin(3.0 * a) / 3.0 + std::sin(5.0 * a) / 5.0);
    };
    p.h_prime = [s](double t) {
        const double a = kTwoPi * t;
        return s * kTwoPi * (std::cos(a) + std::cos(3.0 * a) + std::cos(5.0 * a));
    };
    p.H1 = [s](double t) {
        const double a = kTwoPi * t;
        return -s / kTwoPi *
               (std::cos(a) + std::cos(3.0 * a) / 9.0 + std::cos(5.0 * a) / 25.0);
    };
    p.H2 = [s](double t) {
        const double a = kTwoPi * t;
        return -s / (kTwoPi * kTwoPi) *
               (std::sin(a) + std::sin(3.0 * a) / 27.0 + std::sin(5.0 * a) / 125.0);
    };
    p.c_gamma = quad_c_gamma([&p](double t) {
        const double v = p.h(t);
        return v * v;
    });
    p.sup_h = 1.0;
    return p;
}

Profile Profile::by_name(const std::string& name) {
    if (name == "cosine") return cosine();
    if (name == "square3") return square3();
    throw ConfigError("unknown profile '" + name + "' (expected cosine or square3)");
}

} // namespace mixlab
