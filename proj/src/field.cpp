#include "homog/field.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "fft_plans.hpp"

namespace homog {

namespace detail {

PlanSet::~PlanSet() {
    if (c2c_fwd) fftw_destroy_plan(c2c_fwd);
    if (c2c_bwd) fftw_destroy_plan(c2c_bwd);
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
}

const PlanSet& plans_for(int n1, int n2) {
    static std::mutex mtx;
    static std::map<std::pair<int, int>, std::unique_ptr<PlanSet>> cache;
    std::lock_guard lock(mtx);
    auto& slot = cache[{n1, n2}];
    if (!slot) {
        auto ps = std::make_unique<PlanSet>();
        ps->n1 = n1;
        ps->n2 = n2;
        const std::size_t n = static_cast<std::size_t>(n1) * n2;
        const std::size_t nh = static_cast<std::size_t>(n2) * (n1 / 2 + 1);
        auto a = make_buffer<fftw_complex>(n);
        auto b = make_buffer<fftw_complex>(n);
        auto r = make_buffer<double>(n);
        auto h = make_buffer<fftw_complex>(nh);
        // fftw dimension order is (slow, fast) = (n2, n1)
        ps->c2c_fwd = fftw_plan_dft_2d(n2, n1, a.get(), b.get(), FFTW_FORWARD, FFTW_ESTIMATE);
        ps->c2c_bwd = fftw_plan_dft_2d(n2, n1, a.get(), b.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
        ps->r2c = fftw_plan_dft_r2c_2d(n2, n1, r.get(), h.get(), FFTW_ESTIMATE);
        ps->c2r = fftw_plan_dft_c2r_2d(n2, n1, h.get(), r.get(), FFTW_ESTIMATE);
        slot = std::move(ps);
    }
    return *slot;
}

}  // namespace detail

Grid2D::Grid2D(int n1_, int n2_, double l1_, double l2_)
    : n1(n1_), n2(n2_), l1(l1_), l2(l2_) {
    if (n1 < 2 || n2 < 2) throw std::invalid_argument("Grid2D: pixel counts must be >= 2");
    if (!(l1 > 0.0) || !(l2 > 0.0)) throw std::invalid_argument("Grid2D: cell lengths must be > 0");
}

RealVectorField2D RealVectorField2D::constant(Grid2D g, Vec2 v) {
    RealVectorField2D f(g);
    std::fill(f.x.begin(), f.x.end(), v.x);
    std::fill(f.y.begin(), f.y.end(), v.y);
    return f;
}

int centered_rep(int m, int n) {
    return m <= n / 2 ? m : m - n;
}

Vec2 angular_frequency(const Grid2D& grid, int m, int n) {
    if (m < 0 || m >= grid.n1 || n < 0 || n >= grid.n2)
        throw std::out_of_range("angular_frequency: index out of range");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return {two_pi * centered_rep(m, grid.n1) / grid.l1,
            two_pi * centered_rep(n, grid.n2) / grid.l2};
}

namespace {

void check_sizes(const Grid2D& g, std::size_t nx, std::size_t ny) {
    if (nx != g.npix() || ny != g.npix())
        throw std::invalid_argument("field data size does not match grid");
}

void c2c(const Grid2D& g, const std::complex<double>* in, std::complex<double>* out,
         bool forward) {
    const auto& ps = detail::plans_for(g.n1, g.n2);
    const std::size_t n = g.npix();
    auto a = detail::make_buffer<fftw_complex>(n);
    auto b = detail::make_buffer<fftw_complex>(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k][0] = in[k].real();
        a[k][1] = in[k].imag();
    }
    fftw_execute_dft(forward ? ps.c2c_fwd : ps.c2c_bwd, a.get(), b.get());
    for (std::size_t k = 0; k < n; ++k) out[k] = {b[k][0], b[k][1]};
}

}  // namespace

SpectralVectorField2D forward_transform(const RealVectorField2D& f) {
    check_sizes(f.grid, f.x.size(), f.y.size());
    SpectralVectorField2D out(f.grid);
    const std::size_t n = f.grid.npix();
    std::vector<std::complex<double>> tmp(n);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = f.x[k];
    c2c(f.grid, tmp.data(), out.x.data(), true);
    for (std::size_t k = 0; k < n; ++k) tmp[k] = f.y[k];
    c2c(f.grid, tmp.data(), out.y.data(), true);
    return out;
}

RealVectorField2D inverse_transform(const SpectralVectorField2D& f) {
    check_sizes(f.grid, f.x.size(), f.y.size());
    RealVectorField2D out(f.grid);
    const std::size_t n = f.grid.npix();
    const double scale = 1.0 / static_cast<double>(n);
    std::vector<std::complex<double>> tmp(n);
    c2c(f.grid, f.x.data(), tmp.data(), false);
    for (std::size_t k = 0; k < n; ++k) out.x[k] = tmp[k].real() * scale;
    c2c(f.grid, f.y.data(), tmp.data(), false);
    for (std::size_t k = 0; k < n; ++k) out.y[k] = tmp[k].real() * scale;
    return out;
}

Vec2 mean(const RealVectorField2D& f) {
    check_sizes(f.grid, f.x.size(), f.y.size());
    double sx = 0.0, sy = 0.0;
    for (double v : f.x) sx += v;
    for (double v : f.y) sy += v;
    const double inv = 1.0 / static_cast<double>(f.grid.npix());
    return {sx * inv, sy * inv};
}

double l2_norm(const RealVectorField2D& f) {
    check_sizes(f.grid, f.x.size(), f.y.size());
    double s = 0.0;
    for (std::size_t k = 0; k < f.x.size(); ++k) s += f.x[k] * f.x[k] + f.y[k] * f.y[k];
    return std::sqrt(s / static_cast<double>(f.grid.npix()));
}

}  // namespace homog
