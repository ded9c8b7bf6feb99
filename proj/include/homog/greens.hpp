#pragma once

#include <complex>

#include "homog/field.hpp"

namespace homog {

/// Frequency rule of the periodic Green operator.
enum class GreenVariant { continuous, mueller, willot };

/// Effective frequency entering the Green operator at one index.
struct EffectiveFrequency {
    std::complex<double> xi1;
    std::complex<double> xi2;
};

/// Per-variant effective frequency at index (m,n).
///
/// continuous: the angular frequency, except that the Nyquist component (even
///             n, index n/2) carries its magnitude on the imaginary axis so
///             the per-frequency projector stays exactly Hermitian under the
///             (m,n) -> (-m,-n) pairing.
/// mueller:    (N/L) sin(L*xi/N) per component (zero at Nyquist by itself).
/// willot:     i (N/L) (exp(-i L xi / N) - 1) per component.
EffectiveFrequency effective_frequency(const Grid2D& grid, int m, int n, GreenVariant variant);

/// The projector Gamma^1 = Gamma^0 L^0 for scalar conductivity: in Fourier
/// space conj(xi) (xi . f^) / (conj(xi) . xi), zero where the effective
/// frequency vanishes (in particular at (0,0)). Output is exactly real.
RealVectorField2D apply_gamma1(const RealVectorField2D& f, GreenVariant variant);

/// H^1 = 2 Gamma^1 - I, computed pointwise.
RealVectorField2D apply_h1(const RealVectorField2D& f, GreenVariant variant);

/// Equilibrium residual <|div sigma|^2>^(1/2) with the spectral divergence
/// xi . sigma^ of the chosen variant; normalization ||Sigma|| = 1.
double divergence_residual(const RealVectorField2D& sigma, GreenVariant variant);

}  // namespace homog
