#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mixlab/oscillation.hpp"

using namespace mixlab;

namespace {
const Box2 kUnitBox{{0.0, 0.0}, {1.0, 1.0}};
auto one = [](const Vec2&) { return 1.0; };
} // namespace

TEST_CASE("identity observable averages to zero") {
    const Profile pr = Profile::cosine();
    WaveFrequency f;
    f.zeta = {0.6, 0.8};
    f.xi0 = 0.3;
    auto A = [](double w) { return w; };
    const double limit = oscillation_limit(pr, A, one, kUnitBox);
    CHECK(std::abs(limit) <= 1e-12);
    const double avg = oscillation_average(pr, A, one, kUnitBox, f, 32, 0.7);
    CHECK(std::abs(avg) <= 2e-2);
}

TEST_CASE("squared cosine approaches one half") {
    const Profile pr = Profile::cosine();
    WaveFrequency f;
    f.zeta = {0.6, 0.8};
    f.xi0 = 0.5;
    auto A = [](double w) { return w * w; };
    const double limit = oscillation_limit(pr, A, one, kUnitBox);
    CHECK(limit == doctest::Approx(0.5).epsilon(1e-10));
    const double avg = oscillation_average(pr, A, one, kUnitBox, f, 64, 0.37);
    CHECK(std::abs(avg - limit) <= 0.02);
}

TEST_CASE("gap decays with empirical slope at least 0.9") {
    const Profile pr = Profile::cosine();
    WaveFrequency f;
    f.zeta = {0.6, 0.8};
    f.xi0 = 0.5;
    auto A = [](double w) { return w * w; };
    const double limit = oscillation_limit(pr, A, one, kUnitBox);

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int k : {8, 16, 32, 64, 128, 256}) {
        // worst gap over a small set of times guards against accidental
        // phase zeros at a single t
        double gap = 0.0;
        for (int j = 0; j < 8; ++j) {
            const double t = 0.1 + 0.13 * j;
            gap = std::max(gap,
                           std::abs(oscillation_average(pr, A, one, kUnitBox, f, k, t) - limit));
        }
        const double x = std::log(static_cast<double>(k));
        const double y = std::log(gap);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(-slope >= 0.9);
}
