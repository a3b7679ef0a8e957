#pragma once

#include <functional>
#include <string>

namespace mixlab {

/// Oscillation profile h on the unit torus together with its second
/// antiderivative: H2'' = h, H1 = H2'. All four callables must be
/// 1-periodic; |h| <= 1 and h has zero mean.
struct Profile {
    std::function<double(double)> H2;
    std::function<double(double)> H1;
    std::function<double(double)> h;
    std::function<double(double)> h_prime;
    double c_gamma = 0.0; // squared L2 norm of h on the torus
    double sup_h = 1.0;
    std::string name;

    /// h(t) = cos(2 pi t), H2(t) = -cos(2 pi t) / (4 pi^2).
    static Profile cosine();

    /// Three-harmonic square-wave approximation rescaled to sup |h| = 1.
    /// Higher L2 mass per unit amplitude than the cosine.
    static Profile square3();

    static Profile by_name(const std::string& name);
};

} // namespace mixlab
