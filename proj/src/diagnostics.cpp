#include "homog/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace homog {

IndicatorTriple indicators(const IterState& state, const SchemeParams& params,
                           const Microstructure& micro, GreenVariant variant,
                           std::span<const double> d_series) {
    if (state.k >= static_cast<int>(d_series.size()))
        throw std::invalid_argument("indicators: d_series does not reach the current order");

    const bool em = params.kind == SchemeKind::EM;
    const RealVectorField2D cur =
        em ? em_conforming(state.eps, params, micro, variant, state.E) : state.eps;

    IndicatorTriple out;
    const RealVectorField2D sigma = scale_by_phase(micro, cur, params.z, 1.0);
    out.delta1 = divergence_residual(sigma, variant);

    IterState probe;
    probe.eps = state.eps;
    probe.k = state.k;
    probe.E = state.E;
    if (em)
        step_em(probe, params, micro, variant);
    else
        step_basic(probe, params, micro, variant);
    const RealVectorField2D next =
        em ? em_conforming(probe.eps, params, micro, variant, state.E) : probe.eps;
    double acc = 0.0;
    for (std::size_t i = 0; i < cur.x.size(); ++i) {
        const double dx = next.x[i] - cur.x[i];
        const double dy = next.y[i] - cur.y[i];
        acc += dx * dx + dy * dy;
    }
    out.delta2 = std::sqrt(acc / static_cast<double>(cur.grid.npix()));

    const double normE = std::sqrt(state.E.x * state.E.x + state.E.y * state.E.y);
    out.coef = std::abs(d_series[state.k] * std::pow(params.t, state.k)) * normE;
    return out;
}

KneeReport knee_detect(const SeriesCoefficients& coarse, const SeriesCoefficients& fine,
                       double threshold) {
    if (coarse.source != SeriesCoefficients::Source::numerical ||
        fine.source != SeriesCoefficients::Source::numerical)
        throw std::invalid_argument("knee_detect: both series must be numerical");
    if (coarse.kind != fine.kind || coarse.variant != fine.variant)
        throw std::invalid_argument("knee_detect: mismatched scheme or variant");
    if (!(coarse.grid_n < fine.grid_n))
        throw std::invalid_argument("knee_detect: coarse resolution must be below fine");
    if (!(threshold > 0.0)) throw std::invalid_argument("knee_detect: threshold must be > 0");

    const int len = static_cast<int>(std::min(coarse.d.size(), fine.d.size()));
    KneeReport rep;
    rep.threshold = threshold;
    rep.coarse_n = coarse.grid_n;
    rep.fine_n = fine.grid_n;
    rep.K = len - 1;
    constexpr double eps_machine = std::numeric_limits<double>::epsilon();
    for (int k = 0; k < len; ++k) {
        const double dev = std::abs(coarse.d[k] - fine.d[k]);
        if (dev > threshold * std::max(std::abs(fine.d[k]), eps_machine)) {
            rep.K = k - 1;
            break;
        }
    }
    return rep;
}

}  // namespace homog
