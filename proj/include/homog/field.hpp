#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace homog {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

/// Periodic pixel grid. Pixel (i,j) is centered at ((i+0.5)l1/n1, (j+0.5)l2/n2).
struct Grid2D {
    int n1 = 0;
    int n2 = 0;
    double l1 = 1.0;
    double l2 = 1.0;

    Grid2D() = default;
    Grid2D(int n1_, int n2_, double l1_ = 1.0, double l2_ = 1.0);

    std::size_t npix() const { return static_cast<std::size_t>(n1) * n2; }
    /// Row-major with i (the x1 index) fastest.
    std::size_t at(int i, int j) const { return static_cast<std::size_t>(j) * n1 + i; }

    bool operator==(const Grid2D&) const = default;
};

/// Per-pixel 2-component real field, stored as two planes of n1*n2 values.
struct RealVectorField2D {
    Grid2D grid;
    std::vector<double> x;
    std::vector<double> y;

    RealVectorField2D() = default;
    explicit RealVectorField2D(Grid2D g)
        : grid(g), x(g.npix(), 0.0), y(g.npix(), 0.0) {}

    static RealVectorField2D constant(Grid2D g, Vec2 v);
};

/// Per-frequency 2-component complex field (same index layout as the real field).
struct SpectralVectorField2D {
    Grid2D grid;
    std::vector<std::complex<double>> x;
    std::vector<std::complex<double>> y;

    SpectralVectorField2D() = default;
    explicit SpectralVectorField2D(Grid2D g)
        : grid(g), x(g.npix()), y(g.npix()) {}
};

/// Centered integer representative of a frequency index: m if m <= n/2, else m-n.
/// At even n the Nyquist index n/2 is its own representative.
int centered_rep(int m, int n);

/// Angular frequency of index (m,n): (2*pi*m'/l1, 2*pi*n'/l2).
Vec2 angular_frequency(const Grid2D& grid, int m, int n);

/// Unnormalized DFT sum over pixels. Phases use pixel indices (translation by
/// whole pixels is a pure spectral phase; means and Green applications are
/// unaffected by the sampling offset).
SpectralVectorField2D forward_transform(const RealVectorField2D& f);

/// Inverse transform, divides by n1*n2 and keeps the real part.
RealVectorField2D inverse_transform(const SpectralVectorField2D& f);

Vec2 mean(const RealVectorField2D& f);

/// Mean-square norm <|f|^2>^(1/2); grid-size independent for resampled fields.
double l2_norm(const RealVectorField2D& f);

}  // namespace homog
