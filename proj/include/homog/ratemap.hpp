#pragma once

#include <span>
#include <vector>

namespace homog {

/// Singularities of the effective conductivity confined to [-beta, -1/beta];
/// beta = 3 for the Obnosov cell, +infinity for the checkerboard.
struct SingularityModel {
    double beta = 1.0;
};

/// Convergence radii of the three series in their contrast variable.
struct ConvergenceRadii {
    double b = 0.0;
    double ms = 0.0;
    double em = 0.0;
};

/// rho_B = 1 + 1/beta, rho_MS = (beta+1)/(beta-1), rho_EM = 1. beta >= 1;
/// beta may be +infinity.
ConvergenceRadii radii(double beta);

/// Rate ratios r = rho/|t| per scheme; +infinity at z = 1, r_em is NaN for
/// z < 0 (undefined, not a failure).
struct RateTriple {
    double r_b = 0.0;
    double r_ms = 0.0;
    double r_em = 0.0;
};

RateTriple rates(double beta, double z);

/// z0: crossing of r_B and r_EM. For beta >= 3 the window [z1, z2] is where
/// EM beats MS (degenerate z1 = z2 = 1 at beta = 3); below beta = 3 MS
/// dominates EM for every z and ms_dominant is set.
struct RegimeThresholds {
    double z0 = 0.0;
    bool ms_dominant = false;
    double z1 = 0.0;
    double z2 = 0.0;
};

RegimeThresholds regime_thresholds(double beta);

enum class Winner { B, MS, EM, Tie, Undefined };

struct RateCell {
    double beta = 0.0;
    double z = 0.0;
    RateTriple r;
    Winner winner = Winner::Undefined;
};

/// Winner-per-cell map over the outer product of the two axes (beta outer,
/// z inner); winner is the scheme of maximal defined rate, exact ties -> Tie.
std::vector<RateCell> best_scheme_grid(std::span<const double> beta_axis,
                                       std::span<const double> z_axis);

/// Pointwise operator norms ||Z|| and ||W|| for a two-phase medium with
/// conductivities z, 1 and reference z0 > 0.
struct UnconditionalNorms {
    double normZ = 0.0;
    double normW = 0.0;
};

UnconditionalNorms unconditional_norms(double z, double z0);

}  // namespace homog
