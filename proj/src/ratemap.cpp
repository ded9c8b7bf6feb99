#include "homog/ratemap.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace homog {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_beta(double beta) {
    if (!(beta >= 1.0)) throw std::domain_error("beta must be >= 1");
}

}  // namespace

ConvergenceRadii radii(double beta) {
    require_beta(beta);
    ConvergenceRadii r;
    if (std::isinf(beta)) {
        r.b = 1.0;
        r.ms = 1.0;
    } else {
        r.b = 1.0 + 1.0 / beta;
        r.ms = beta == 1.0 ? kInf : (beta + 1.0) / (beta - 1.0);
    }
    r.em = 1.0;
    return r;
}

RateTriple rates(double beta, double z) {
    require_beta(beta);
    RateTriple r;
    const double az1 = std::abs(z - 1.0);
    if (z == 1.0) {
        r.r_b = kInf;
        r.r_ms = kInf;
        r.r_em = kInf;
        return r;
    }
    if (std::isinf(beta)) {
        r.r_b = 1.0 / az1;
        r.r_ms = std::abs(z + 1.0) / az1;
    } else {
        r.r_b = std::abs((beta + 1.0) / (beta * (z - 1.0)));
        r.r_ms = beta == 1.0 ? kInf
                             : std::abs((beta + 1.0) * (z + 1.0) / ((beta - 1.0) * (z - 1.0)));
    }
    if (z < 0.0)
        r.r_em = kNaN;
    else {
        const double s = std::sqrt(z);
        r.r_em = std::abs((s + 1.0) / (s - 1.0));
    }
    return r;
}

RegimeThresholds regime_thresholds(double beta) {
    require_beta(beta);
    RegimeThresholds t;
    if (std::isinf(beta)) {
        t.z0 = 0.0;
        t.z1 = 0.0;
        t.z2 = kInf;
        return t;
    }
    const double root = std::sqrt((beta + 1.0) / beta) - 1.0;
    t.z0 = root * root;
    if (beta < 3.0) {
        t.ms_dominant = true;
        t.z1 = t.z2 = kNaN;
        return t;
    }
    const double disc = std::sqrt((beta - 1.0) * (beta - 1.0) - 4.0);
    const double lo = 0.5 * (beta - 1.0 - disc);
    const double hi = 0.5 * (beta - 1.0 + disc);
    t.z1 = lo * lo;
    t.z2 = hi * hi;
    return t;
}

std::vector<RateCell> best_scheme_grid(std::span<const double> beta_axis,
                                       std::span<const double> z_axis) {
    for (std::size_t i = 1; i < beta_axis.size(); ++i)
        if (!(beta_axis[i] > beta_axis[i - 1]))
            throw std::invalid_argument("best_scheme_grid: beta axis must be increasing");
    for (std::size_t i = 1; i < z_axis.size(); ++i)
        if (!(z_axis[i] > z_axis[i - 1]))
            throw std::invalid_argument("best_scheme_grid: z axis must be increasing");
    std::vector<RateCell> cells;
    cells.reserve(beta_axis.size() * z_axis.size());
    for (double beta : beta_axis) {
        for (double z : z_axis) {
            RateCell c;
            c.beta = beta;
            c.z = z;
            c.r = rates(beta, z);
            const double rv[3] = {c.r.r_b, c.r.r_ms, c.r.r_em};
            int best = -1;
            bool tie = false;
            for (int s = 0; s < 3; ++s) {
                if (std::isnan(rv[s])) continue;
                if (best < 0 || rv[s] > rv[best]) {
                    best = s;
                    tie = false;
                } else if (rv[s] == rv[best]) {
                    tie = true;
                }
            }
            if (best < 0)
                c.winner = Winner::Undefined;
            else if (tie)
                c.winner = Winner::Tie;
            else
                c.winner = best == 0 ? Winner::B : best == 1 ? Winner::MS : Winner::EM;
            cells.push_back(c);
        }
    }
    return cells;
}

UnconditionalNorms unconditional_norms(double z, double z0) {
    if (!(z0 > 0.0)) throw std::domain_error("unconditional_norms: z0 must be > 0");
    if (z + z0 == 0.0) throw std::domain_error("unconditional_norms: z + z0 must be nonzero");
    UnconditionalNorms n;
    n.normZ = std::max(std::abs(z - z0), std::abs(1.0 - z0)) / z0;
    n.normW = std::max(std::abs(z - z0) / std::abs(z + z0), std::abs(1.0 - z0) / (1.0 + z0));
    return n;
}

}  // namespace homog
