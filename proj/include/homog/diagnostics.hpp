#pragma once

#include <span>

#include "homog/schemes.hpp"
#include "homog/series.hpp"

namespace homog {

/// The three stopping indicators at the state's current iterate.
struct IndicatorTriple {
    double delta1 = 0.0;  // equilibrium residual, ||Sigma|| = 1
    double delta2 = 0.0;  // difference to the next iterate
    double coef = 0.0;    // |d_k t^k| ||E||
};

/// Evaluates delta1 at the current iterate, delta2 against one further step
/// (on a copy), and the coefficient indicator from the supplied numerical
/// d-series (d_series must reach order state.k).
IndicatorTriple indicators(const IterState& state, const SchemeParams& params,
                           const Microstructure& micro, GreenVariant variant,
                           std::span<const double> d_series);

/// Discretization knee between two resolutions of the same scheme/variant.
struct KneeReport {
    int K = 0;
    double threshold = 0.0;
    int coarse_n = 0;
    int fine_n = 0;
};

/// K = (smallest k whose coarse/fine relative deviation exceeds threshold) - 1,
/// or the last common order when no deviation is found.
KneeReport knee_detect(const SeriesCoefficients& coarse, const SeriesCoefficients& fine,
                       double threshold = 0.05);

}  // namespace homog
