#include "homog/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "homog/series.hpp"

namespace homog {

namespace {

RealVectorField2D subtract(const RealVectorField2D& a, const RealVectorField2D& b) {
    RealVectorField2D out(a.grid);
    for (std::size_t k = 0; k < a.x.size(); ++k) {
        out.x[k] = a.x[k] - b.x[k];
        out.y[k] = a.y[k] - b.y[k];
    }
    return out;
}

/// deltaL/z0 multipliers per phase.
std::pair<double, double> contrast_multipliers(const SchemeParams& p) {
    return {(p.z - p.z0) / p.z0, (1.0 - p.z0) / p.z0};
}

RealVectorField2D sigma_field(const RealVectorField2D& eps, double z,
                              const Microstructure& micro) {
    return scale_by_phase(micro, eps, z, 1.0);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

SchemeParams scheme_params(SchemeKind kind, double z) {
    SchemeParams p;
    p.kind = kind;
    p.z = z;
    switch (kind) {
        case SchemeKind::B:
            p.z0 = 1.0;
            p.t = z - 1.0;
            p.m1 = z - 1.0;
            p.m2 = 0.0;
            break;
        case SchemeKind::MS:
            if (z == -1.0) throw std::domain_error("scheme_params: MS reference singular at z = -1");
            p.z0 = 0.5 * (z + 1.0);
            p.t = (z - 1.0) / (z + 1.0);
            p.m1 = p.t;
            p.m2 = -p.t;
            break;
        case SchemeKind::EM:
            if (!(z > 0.0)) throw std::domain_error("scheme_params: EM requires z > 0");
            p.z0 = std::sqrt(z);
            p.t = (p.z0 - 1.0) / (p.z0 + 1.0);
            p.m1 = p.t;
            p.m2 = -p.t;
            break;
    }
    return p;
}

IterState init_basic_state(const Microstructure& micro, Vec2 E) {
    IterState s;
    s.eps = RealVectorField2D::constant(micro.grid, E);
    s.E = E;
    return s;
}

IterState init_em_state(const SchemeParams& params, const Microstructure& micro, Vec2 E,
                        bool with_tau) {
    if (params.kind != SchemeKind::EM)
        throw std::invalid_argument("init_em_state: params must be EM");
    IterState s;
    s.E = E;
    s.eps = RealVectorField2D(micro.grid);
    const double f1 = 2.0 * params.z0 / (params.z + params.z0);
    const double f2 = 2.0 * params.z0 / (1.0 + params.z0);
    for (std::size_t k = 0; k < s.eps.x.size(); ++k) {
        const double f = micro.chi1[k] ? f1 : f2;
        s.eps.x[k] = f * E.x;
        s.eps.y[k] = f * E.y;
    }
    if (with_tau)
        s.tau = RealVectorField2D::constant(micro.grid, 2.0 * params.z0 * E);
    return s;
}

void step_basic(IterState& state, const SchemeParams& params, const Microstructure& micro,
                GreenVariant variant) {
    if (params.kind == SchemeKind::EM)
        throw std::invalid_argument("step_basic: params must be B or MS");
    const RealVectorField2D g = scale_by_phase(micro, state.eps, params.m1, params.m2);
    const RealVectorField2D gamma = apply_gamma1(g, variant);
    for (std::size_t k = 0; k < state.eps.x.size(); ++k) {
        state.eps.x[k] = state.E.x - gamma.x[k];
        state.eps.y[k] = state.E.y - gamma.y[k];
    }
    ++state.k;
}

void step_em(IterState& state, const SchemeParams& params, const Microstructure& micro,
             GreenVariant variant) {
    if (params.kind != SchemeKind::EM) throw std::invalid_argument("step_em: params must be EM");
    const auto [d1, d2] = contrast_multipliers(params);
    const RealVectorField2D g = scale_by_phase(micro, state.eps, d1, d2);
    const RealVectorField2D gamma = apply_gamma1(g, variant);
    const double f1 = 2.0 * params.z0 / (params.z + params.z0);
    const double f2 = 2.0 * params.z0 / (1.0 + params.z0);
    for (std::size_t k = 0; k < state.eps.x.size(); ++k) {
        const double f = micro.chi1[k] ? f1 : f2;
        const double rx = state.eps.x[k] + gamma.x[k] - state.E.x;
        const double ry = state.eps.y[k] + gamma.y[k] - state.E.y;
        state.eps.x[k] -= f * rx;
        state.eps.y[k] -= f * ry;
    }
    ++state.k;
}

void step_em_polarization(IterState& state, const SchemeParams& params,
                          const Microstructure& micro, GreenVariant variant) {
    if (params.kind != SchemeKind::EM)
        throw std::invalid_argument("step_em_polarization: params must be EM");
    if (!state.tau) throw std::invalid_argument("step_em_polarization: state.tau missing");
    const RealVectorField2D w = scale_by_phase(micro, *state.tau, params.m1, params.m2);
    const RealVectorField2D h = apply_h1(w, variant);
    RealVectorField2D& tau = *state.tau;
    const double c = 2.0 * params.z0;
    for (std::size_t k = 0; k < tau.x.size(); ++k) {
        tau.x[k] = -h.x[k] + c * state.E.x;
        tau.y[k] = -h.y[k] + c * state.E.y;
    }
    // keep e = tau/(z + z0) in sync (Eq. of the polarization definition)
    for (std::size_t k = 0; k < tau.x.size(); ++k) {
        const double denom = (micro.chi1[k] ? params.z : 1.0) + params.z0;
        state.eps.x[k] = tau.x[k] / denom;
        state.eps.y[k] = tau.y[k] / denom;
    }
    ++state.k;
}

RealVectorField2D em_conforming(const RealVectorField2D& e, const SchemeParams& params,
                                const Microstructure& micro, GreenVariant variant, Vec2 E) {
    if (params.kind != SchemeKind::EM)
        throw std::invalid_argument("em_conforming: params must be EM");
    const auto [d1, d2] = contrast_multipliers(params);
    const RealVectorField2D g = scale_by_phase(micro, e, d1, d2);
    const RealVectorField2D gamma = apply_gamma1(g, variant);
    RealVectorField2D out(e.grid);
    for (std::size_t k = 0; k < out.x.size(); ++k) {
        out.x[k] = E.x - gamma.x[k];
        out.y[k] = E.y - gamma.y[k];
    }
    return out;
}

double effective_estimate(const RealVectorField2D& eps, double z, const Microstructure& micro) {
    return mean(sigma_field(eps, z, micro)).x;
}

SolveReport solve(SolveScheme scheme, const Microstructure& micro, double z,
                  GreenVariant variant, StopCriterion criterion, double tol, int max_iter,
                  Vec2 E) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("solve: max_iter must be >= 1");

    const bool em = scheme == SolveScheme::EM || scheme == SolveScheme::EMPolarization;
    const SchemeKind kind = scheme == SolveScheme::B ? SchemeKind::B
                            : scheme == SolveScheme::MS ? SchemeKind::MS
                                                        : SchemeKind::EM;
    const SchemeParams params = scheme_params(kind, z);

    SolveReport report;
    report.params = params;
    report.variant = variant;
    report.criterion = criterion;
    report.tol = tol;

    IterState state = em ? init_em_state(params, micro, E,
                                         scheme == SolveScheme::EMPolarization)
                         : init_basic_state(micro, E);
    RealVectorField2D reported =
        em ? em_conforming(state.eps, params, micro, variant, E) : state.eps;

    CoefficientExtractor extractor(kind, micro, variant);
    const double normE = std::sqrt(E.x * E.x + E.y * E.y);

    report.status = SolveStatus::max_iter;
    for (int k = 1; k <= max_iter; ++k) {
        switch (scheme) {
            case SolveScheme::B:
            case SolveScheme::MS: step_basic(state, params, micro, variant); break;
            case SolveScheme::EM: step_em(state, params, micro, variant); break;
            case SolveScheme::EMPolarization:
                step_em_polarization(state, params, micro, variant);
                break;
        }
        RealVectorField2D next =
            em ? em_conforming(state.eps, params, micro, variant, E) : state.eps;
        const double delta2 = l2_norm(subtract(next, reported));
        reported = std::move(next);

        const RealVectorField2D sigma = sigma_field(reported, z, micro);
        const double delta1 = divergence_residual(sigma, variant);
        const double z_eff = mean(sigma).x;

        extractor.advance();
        const double coef = std::abs(extractor.d()[k] * std::pow(params.t, k)) * normE;

        report.rows.push_back({k, delta1, delta2, coef, z_eff});
        report.iterations = k;
        report.final_estimate = z_eff;

        if (!finite(delta1) || !finite(delta2) || !finite(z_eff) || delta2 > 1e6 * normE) {
            report.status = SolveStatus::diverged;
            break;
        }
        const double crit = criterion == StopCriterion::div ? delta1
                            : criterion == StopCriterion::diff ? delta2
                                                               : coef;
        if (crit <= tol) {
            report.status = SolveStatus::converged;
            break;
        }
    }
    return report;
}

}  // namespace homog
