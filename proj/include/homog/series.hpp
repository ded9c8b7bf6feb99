#pragma once

#include <span>
#include <vector>

#include "homog/greens.hpp"
#include "homog/microstructure.hpp"
#include "homog/schemes.hpp"

namespace homog {

/// Neumann-series coefficients b_k (for z~/z0) and d_k (for z~), orders 0..K.
struct SeriesCoefficients {
    SchemeKind kind = SchemeKind::MS;
    enum class Source { numerical, analytic } source = Source::analytic;
    std::vector<double> b;
    std::vector<double> d;
    int grid_n = 0;  // 0 for analytic
    GreenVariant variant = GreenVariant::continuous;
};

/// Incremental extraction of the microstructural series coefficients by
/// repeated application of the scheme operator (one Green application per
/// order). Loading direction is e1.
class CoefficientExtractor {
  public:
    CoefficientExtractor(SchemeKind kind, const Microstructure& micro, GreenVariant variant,
                         Vec2 load = {1.0, 0.0});

    /// Extend b and d by one order.
    void advance();

    int order() const { return static_cast<int>(d_.size()) - 1; }
    const std::vector<double>& b() const { return b_; }
    const std::vector<double>& d() const { return d_; }

  private:
    SchemeKind kind_;
    const Microstructure* micro_;
    GreenVariant variant_;
    Vec2 load_;
    RealVectorField2D running_;
    std::vector<double> b_{1.0};
    std::vector<double> d_{1.0};
};

/// b_k = d_k = (-1)^(k-1) <chi1 (Gamma_chi1)^(k-1) e1>.e1 for B (chi' and the
/// scheme's d-recursion for MS, H^1 and the factor 2 for EM).
SeriesCoefficients numerical_coefficients(SchemeKind kind, const Microstructure& micro,
                                          GreenVariant variant, int K);

/// Coefficients of sqrt(sum a_k t^k): b0 = sqrt(a0), b1 = a1/(2 b0),
/// b_k = (a_k - sum_{i=1}^{k-1} b_i b_{k-i})/(2 b0). Requires a0 > 0.
std::vector<double> sqrt_series(std::span<const double> a);

/// Exact series of the Obnosov closed form for the scheme's contrast variable.
/// Orders up to 26 follow an exact dyadic-rational path; higher orders use the
/// same recursion in double precision.
SeriesCoefficients analytic_obnosov(SchemeKind kind, int K);

/// z~ = sqrt((1+3z)/(3+z)); real z outside [-3, -1/3].
double obnosov_exact(double z);

struct PartialSum {
    double estimate = 0.0;
    double error = 0.0;
};

/// Partial sum of the d-series at order n and its deviation from the closed
/// form, with t derived from z via scheme_params.
PartialSum partial_sum_error(const SeriesCoefficients& coeffs, double z, int n);

}  // namespace homog
