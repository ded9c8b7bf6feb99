#include "homog/greens.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fft_plans.hpp"

namespace homog {

namespace {

using cplx = std::complex<double>;

cplx effective_axis_value(int m, int n, double l, GreenVariant variant) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double xi = two_pi * centered_rep(m, n) / l;
    const double ratio = static_cast<double>(n) / l;  // N/L
    switch (variant) {
        case GreenVariant::continuous:
            // The Nyquist derivative of a real signal has no consistent sign;
            // rotating it to the imaginary axis keeps the per-frequency
            // projector Hermitian while preserving its magnitude. This is the
            // same structure the one-sided-difference rule produces there.
            if (n % 2 == 0 && m == n / 2) return cplx(0.0, xi);
            return xi;
        case GreenVariant::mueller:
            return ratio * std::sin(xi / ratio);
        case GreenVariant::willot:
            return cplx(0.0, 1.0) * ratio * (std::exp(cplx(0.0, -xi / ratio)) - 1.0);
    }
    throw std::invalid_argument("effective_axis_value: unknown variant");
}

/// Per-axis tables over the r2c half grid (axis 1 kept for m in [0, n1/2]).
struct AxisTables {
    std::vector<cplx> xi1;  // size n1/2 + 1
    std::vector<cplx> xi2;  // size n2
};

AxisTables axis_tables(const Grid2D& g, GreenVariant variant) {
    AxisTables t;
    t.xi1.resize(g.n1 / 2 + 1);
    t.xi2.resize(g.n2);
    for (int m = 0; m <= g.n1 / 2; ++m) t.xi1[m] = effective_axis_value(m, g.n1, g.l1, variant);
    for (int m = 0; m < g.n2; ++m) t.xi2[m] = effective_axis_value(m, g.n2, g.l2, variant);
    return t;
}

struct HalfSpectrum {
    std::size_t count = 0;
    detail::fftw_buffer<fftw_complex> x{nullptr};
    detail::fftw_buffer<fftw_complex> y{nullptr};
};

HalfSpectrum forward_r2c(const RealVectorField2D& f) {
    const Grid2D& g = f.grid;
    if (f.x.size() != g.npix() || f.y.size() != g.npix())
        throw std::invalid_argument("apply_gamma1: field data size does not match grid");
    const auto& ps = detail::plans_for(g.n1, g.n2);
    HalfSpectrum h;
    h.count = static_cast<std::size_t>(g.n2) * (g.n1 / 2 + 1);
    h.x = detail::make_buffer<fftw_complex>(h.count);
    h.y = detail::make_buffer<fftw_complex>(h.count);
    auto real = detail::make_buffer<double>(g.npix());
    std::copy(f.x.begin(), f.x.end(), real.get());
    fftw_execute_dft_r2c(ps.r2c, real.get(), h.x.get());
    std::copy(f.y.begin(), f.y.end(), real.get());
    fftw_execute_dft_r2c(ps.r2c, real.get(), h.y.get());
    return h;
}

RealVectorField2D inverse_c2r(const Grid2D& g, HalfSpectrum& h) {
    const auto& ps = detail::plans_for(g.n1, g.n2);
    RealVectorField2D out(g);
    auto real = detail::make_buffer<double>(g.npix());
    const double scale = 1.0 / static_cast<double>(g.npix());
    fftw_execute_dft_c2r(ps.c2r, h.x.get(), real.get());
    for (std::size_t k = 0; k < g.npix(); ++k) out.x[k] = real[k] * scale;
    fftw_execute_dft_c2r(ps.c2r, h.y.get(), real.get());
    for (std::size_t k = 0; k < g.npix(); ++k) out.y[k] = real[k] * scale;
    return out;
}

}  // namespace

EffectiveFrequency effective_frequency(const Grid2D& grid, int m, int n, GreenVariant variant) {
    if (m < 0 || m >= grid.n1 || n < 0 || n >= grid.n2)
        throw std::out_of_range("effective_frequency: index out of range");
    return {effective_axis_value(m, grid.n1, grid.l1, variant),
            effective_axis_value(n, grid.n2, grid.l2, variant)};
}

RealVectorField2D apply_gamma1(const RealVectorField2D& f, GreenVariant variant) {
    const Grid2D& g = f.grid;
    const AxisTables t = axis_tables(g, variant);
    HalfSpectrum h = forward_r2c(f);
    const int hw = g.n1 / 2 + 1;
    for (int j = 0; j < g.n2; ++j) {
        const cplx xi2 = t.xi2[j];
        for (int i = 0; i < hw; ++i) {
            const cplx xi1 = t.xi1[i];
            const std::size_t k = static_cast<std::size_t>(j) * hw + i;
            const double s = std::norm(xi1) + std::norm(xi2);
            if (s == 0.0) {
                h.x[k][0] = h.x[k][1] = 0.0;
                h.y[k][0] = h.y[k][1] = 0.0;
                continue;
            }
            const cplx fx(h.x[k][0], h.x[k][1]);
            const cplx fy(h.y[k][0], h.y[k][1]);
            const cplx p = (xi1 * fx + xi2 * fy) / s;
            const cplx ox = std::conj(xi1) * p;
            const cplx oy = std::conj(xi2) * p;
            h.x[k][0] = ox.real();
            h.x[k][1] = ox.imag();
            h.y[k][0] = oy.real();
            h.y[k][1] = oy.imag();
        }
    }
    return inverse_c2r(g, h);
}

RealVectorField2D apply_h1(const RealVectorField2D& f, GreenVariant variant) {
    RealVectorField2D out = apply_gamma1(f, variant);
    for (std::size_t k = 0; k < out.x.size(); ++k) {
        out.x[k] = 2.0 * out.x[k] - f.x[k];
        out.y[k] = 2.0 * out.y[k] - f.y[k];
    }
    return out;
}

double divergence_residual(const RealVectorField2D& sigma, GreenVariant variant) {
    const Grid2D& g = sigma.grid;
    const AxisTables t = axis_tables(g, variant);
    HalfSpectrum h = forward_r2c(sigma);
    const int hw = g.n1 / 2 + 1;
    double sum = 0.0;
    for (int j = 0; j < g.n2; ++j) {
        const cplx xi2 = t.xi2[j];
        for (int i = 0; i < hw; ++i) {
            const cplx xi1 = t.xi1[i];
            if (std::norm(xi1) + std::norm(xi2) == 0.0) continue;
            const std::size_t k = static_cast<std::size_t>(j) * hw + i;
            const cplx sx(h.x[k][0], h.x[k][1]);
            const cplx sy(h.y[k][0], h.y[k][1]);
            // interior columns stand for a conjugate pair in the full spectrum
            const double w = (i == 0 || (g.n1 % 2 == 0 && i == g.n1 / 2)) ? 1.0 : 2.0;
            sum += w * std::norm(xi1 * sx + xi2 * sy);
        }
    }
    const double npix = static_cast<double>(g.npix());
    return std::sqrt(sum) / npix;
}

}  // namespace homog
