#pragma once

#include <optional>
#include <vector>

#include "homog/field.hpp"
#include "homog/greens.hpp"
#include "homog/microstructure.hpp"

namespace homog {

enum class SchemeKind { B, MS, EM };

/// Reference medium, contrast variable and per-phase multipliers of one scheme.
/// m1/m2 are deltaL/z0 per phase for B and MS, and the W-values
/// (z-z0)/(z+z0), (1-z0)/(1+z0) for EM.
struct SchemeParams {
    SchemeKind kind = SchemeKind::MS;
    double z = 1.0;
    double z0 = 1.0;
    double t = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
};

/// B: z0 = 1, t = z-1. MS: z0 = (z+1)/2, t = (z-1)/(z+1) (z != -1).
/// EM: z0 = sqrt(z), t = (sqrt(z)-1)/(sqrt(z)+1) (z > 0).
SchemeParams scheme_params(SchemeKind kind, double z);

struct IterState {
    RealVectorField2D eps;                   // eps^(k) for B/MS, e^(k) for EM
    std::optional<RealVectorField2D> tau;    // EM polarization variant
    int k = 0;
    Vec2 E{1.0, 0.0};
};

/// eps^(0) = E for B/MS.
IterState init_basic_state(const Microstructure& micro, Vec2 E = {1.0, 0.0});
/// e^(0) = 2 z0/(z+z0) E pointwise (the j = 0 series term); tau^(0) = 2 z0 E
/// when with_tau is set.
IterState init_em_state(const SchemeParams& params, const Microstructure& micro,
                        Vec2 E = {1.0, 0.0}, bool with_tau = false);

/// One fixed-point step eps <- E - Gamma^1((deltaL/z0) eps) for B/MS.
void step_basic(IterState& state, const SchemeParams& params, const Microstructure& micro,
                GreenVariant variant);

/// One accelerated step e <- e - 2 z0/(z+z0) [(I + Gamma^0 deltaL) e - E].
void step_em(IterState& state, const SchemeParams& params, const Microstructure& micro,
             GreenVariant variant);

/// Polarization form tau <- -H^1(W tau) + 2 z0 E; e is kept in sync as
/// tau/(z+z0) pointwise.
void step_em_polarization(IterState& state, const SchemeParams& params,
                          const Microstructure& micro, GreenVariant variant);

/// Conforming recovery E - Gamma^1((deltaL/z0) e) for EM iterates.
RealVectorField2D em_conforming(const RealVectorField2D& e, const SchemeParams& params,
                                const Microstructure& micro, GreenVariant variant,
                                Vec2 E = {1.0, 0.0});

/// <sigma>.e1 with sigma = (z chi1 + chi2) eps; loading convention E = e1.
double effective_estimate(const RealVectorField2D& eps, double z, const Microstructure& micro);

enum class SolveScheme { B, MS, EM, EMPolarization };
enum class StopCriterion { div, diff, coef };
enum class SolveStatus { converged, max_iter, diverged };

struct SolveRow {
    int k = 0;
    double delta1 = 0.0;  // equilibrium residual
    double delta2 = 0.0;  // iterate difference
    double coef = 0.0;    // |d_k t^k| ||E||
    double z_eff = 0.0;
};

struct SolveReport {
    SchemeParams params;
    GreenVariant variant = GreenVariant::continuous;
    StopCriterion criterion = StopCriterion::div;
    double tol = 0.0;
    SolveStatus status = SolveStatus::max_iter;
    std::vector<SolveRow> rows;
    int iterations = 0;
    double final_estimate = 0.0;
};

/// Run a scheme from its series-matched initial field, recording all three
/// indicators each iteration. EM variants report the conforming field.
SolveReport solve(SolveScheme scheme, const Microstructure& micro, double z,
                  GreenVariant variant, StopCriterion criterion, double tol, int max_iter,
                  Vec2 E = {1.0, 0.0});

}  // namespace homog
