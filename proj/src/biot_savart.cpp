#include "mixlab/biot_savart.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>

#include "mixlab/errors.hpp"

namespace mixlab {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

BiotSavartResult biot_savart_velocity(const std::vector<double>& rho, int n1, int n2,
                                      const Box2& box) {
    if (n1 < 4 || n2 < 4) throw Error("biot_savart grid too small");
    const std::size_t n_nodes = static_cast<std::size_t>(n2 + 1) * n1;
    if (rho.size() != n_nodes) throw Error("biot_savart: rho size mismatch");
    for (double v : rho)
        if (!std::isfinite(v)) throw Error("biot_savart: non-finite density sample");

    const double L1 = box.width();
    const double H = box.height();

    // Vorticity w = -d1 rho, row by row in spectral space.
    std::vector<double> w(n_nodes, 0.0);
    {
        double* row = fftw_alloc_real(n1);
        fftw_complex* hat = fftw_alloc_complex(n1 / 2 + 1);
        fftw_plan fwd = fftw_plan_dft_r2c_1d(n1, row, hat, FFTW_ESTIMATE);
        fftw_plan bwd = fftw_plan_dft_c2r_1d(n1, hat, row, FFTW_ESTIMATE);
        for (int j = 0; j <= n2; ++j) {
            std::memcpy(row, rho.data() + static_cast<std::size_t>(j) * n1,
                        sizeof(double) * n1);
            fftw_execute(fwd);
            for (int k = 0; k <= n1 / 2; ++k) {
                const double kx = kTwoPi * k / L1;
                // w_hat = -(i kx) rho_hat; Nyquist derivative dropped.
                const std::complex<double> r(hat[k][0], hat[k][1]);
                const std::complex<double> wh =
                    (2 * k == n1) ? 0.0 : std::complex<double>(0.0, -kx) * r;
                hat[k][0] = wh.real();
                hat[k][1] = wh.imag();
            }
            if (std::abs(std::complex<double>(hat[0][0], hat[0][1])) / n1 > 1e-10)
                throw NonNeutralData("x1 zero mode of the vorticity is nonzero");
            fftw_execute(bwd);
            for (int i = 0; i < n1; ++i)
                w[static_cast<std::size_t>(j) * n1 + i] = row[i] / n1;
        }
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(row);
        fftw_free(hat);
    }

    // Odd extension across both x2 edges onto the doubled periodic domain.
    const int ne = 2 * n2;
    double* ext = fftw_alloc_real(static_cast<std::size_t>(ne) * n1);
    std::memset(ext, 0, sizeof(double) * ne * n1);
    for (int j = 1; j < n2; ++j) {
        for (int i = 0; i < n1; ++i) {
            const double v = w[static_cast<std::size_t>(j) * n1 + i];
            ext[static_cast<std::size_t>(j) * n1 + i] = v;
            ext[static_cast<std::size_t>(ne - j) * n1 + i] = -v;
        }
    }

    const int nk = n1 / 2 + 1;
    fftw_complex* what = fftw_alloc_complex(static_cast<std::size_t>(ne) * nk);
    fftw_complex* u1hat = fftw_alloc_complex(static_cast<std::size_t>(ne) * nk);
    fftw_complex* u2hat = fftw_alloc_complex(static_cast<std::size_t>(ne) * nk);
    fftw_plan fwd2 = fftw_plan_dft_r2c_2d(ne, n1, ext, what, FFTW_ESTIMATE);
    fftw_execute(fwd2);
    fftw_destroy_plan(fwd2);

    double div_resid = 0.0;
    for (int j = 0; j < ne; ++j) {
        const int js = (j <= n2) ? j : j - ne;
        const double ky = kTwoPi * js / (2.0 * H);
        for (int k = 0; k < nk; ++k) {
            const double kx = kTwoPi * k / L1;
            const std::size_t idx = static_cast<std::size_t>(j) * nk + k;
            const std::complex<double> wh(what[idx][0], what[idx][1]);
            std::complex<double> psi = 0.0;
            const double k2 = kx * kx + ky * ky;
            if (k2 > 0.0) psi = wh / (-k2);
            // Derivatives drop the unmatched Nyquist modes.
            const bool nyq = (2 * k == n1) || (js == n2) || (js == -n2);
            const std::complex<double> u1h =
                nyq ? 0.0 : std::complex<double>(0.0, -ky) * psi;
            const std::complex<double> u2h =
                nyq ? 0.0 : std::complex<double>(0.0, kx) * psi;
            u1hat[idx][0] = u1h.real();
            u1hat[idx][1] = u1h.imag();
            u2hat[idx][0] = u2h.real();
            u2hat[idx][1] = u2h.imag();
            const std::complex<double> div =
                std::complex<double>(0.0, kx) * u1h + std::complex<double>(0.0, ky) * u2h;
            div_resid = std::max(div_resid, std::abs(div) / (ne * n1));
        }
    }
    fftw_free(what);

    double* u1ext = fftw_alloc_real(static_cast<std::size_t>(ne) * n1);
    double* u2ext = fftw_alloc_real(static_cast<std::size_t>(ne) * n1);
    fftw_plan b1 = fftw_plan_dft_c2r_2d(ne, n1, u1hat, u1ext, FFTW_ESTIMATE);
    fftw_plan b2 = fftw_plan_dft_c2r_2d(ne, n1, u2hat, u2ext, FFTW_ESTIMATE);
    fftw_execute(b1);
    fftw_execute(b2);
    fftw_destroy_plan(b1);
    fftw_destroy_plan(b2);
    fftw_free(u1hat);
    fftw_free(u2hat);

    BiotSavartResult out;
    out.n1 = n1;
    out.n2 = n2;
    out.box = box;
    out.u1.resize(n_nodes);
    out.u2.resize(n_nodes);
    const double norm = 1.0 / (static_cast<double>(ne) * n1);
    for (int j = 0; j <= n2; ++j) {
        const int je = (j == n2) ? n2 : j;
        for (int i = 0; i < n1; ++i) {
            out.u1[static_cast<std::size_t>(j) * n1 + i] =
                u1ext[static_cast<std::size_t>(je) * n1 + i] * norm;
            out.u2[static_cast<std::size_t>(j) * n1 + i] =
                u2ext[static_cast<std::size_t>(je) * n1 + i] * norm;
        }
    }
    out.spectral_divergence = div_resid;
    fftw_free(ext);
    fftw_free(u1ext);
    fftw_free(u2ext);
    return out;
}

} // namespace mixlab
