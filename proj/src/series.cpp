#include "homog/series.hpp"

#include <cmath>
#include <stdexcept>

namespace homog {

namespace {

// Dyadic rational num/2^exp on __int128; exact for the benchmark-cell
// recursions up to order ~26 (measured headroom: < 80 of 126 bits).
struct Dyadic {
    __int128 num = 0;
    int exp = 0;

    static Dyadic from_int(long long v) { return normalized(v, 0); }
    static Dyadic pow2(int e) {  // 2^e, e may be negative
        return e >= 0 ? normalized(__int128(1) << e, 0) : normalized(1, -e);
    }

    static int bits(__int128 v) {
        if (v < 0) v = -v;
        int b = 0;
        while (v) {
            v >>= 1;
            ++b;
        }
        return b;
    }

    static Dyadic normalized(__int128 n, int e) {
        if (n == 0) return {0, 0};
        while ((n & 1) == 0 && e > 0) {
            n >>= 1;
            --e;
        }
        return {n, e};
    }

    Dyadic operator+(const Dyadic& o) const {
        const int e = std::max(exp, o.exp);
        const int s1 = e - exp, s2 = e - o.exp;
        if (bits(num) + s1 > 125 || bits(o.num) + s2 > 125)
            throw std::overflow_error("Dyadic add overflow");
        return normalized((num << s1) + (o.num << s2), e);
    }
    Dyadic operator-(const Dyadic& o) const { return *this + Dyadic{-o.num, o.exp}; }
    Dyadic operator*(const Dyadic& o) const {
        if (bits(num) + bits(o.num) > 125) throw std::overflow_error("Dyadic mul overflow");
        return normalized(num * o.num, exp + o.exp);
    }
    Dyadic halved() const { return normalized(num, exp + 1); }

    double to_double() const { return std::ldexp(static_cast<double>(num), -exp); }
};

// sqrt-series recursion on dyadic input with a0 = 1.
std::vector<Dyadic> sqrt_series_exact(const std::vector<Dyadic>& a) {
    std::vector<Dyadic> b(a.size());
    b[0] = Dyadic::from_int(1);
    if (a.size() > 1) b[1] = a[1].halved();
    for (std::size_t k = 2; k < a.size(); ++k) {
        Dyadic s = Dyadic::from_int(0);
        for (std::size_t i = 1; i < k; ++i) s = s + b[i] * b[k - i];
        b[k] = (a[k] - s).halved();
    }
    return b;
}

struct SchemeSeries {
    std::vector<Dyadic> a;  // (z~/z0)^2
    std::vector<Dyadic> c;  // z~^2
};

SchemeSeries squared_series(SchemeKind kind, int K) {
    SchemeSeries s;
    s.a.resize(K + 1);
    s.c.resize(K + 1);
    s.a[0] = s.c[0] = Dyadic::from_int(1);
    switch (kind) {
        case SchemeKind::B:
            // a_k = 2 (-1)^(k-1) 4^-k; matrix reference, c = a
            for (int k = 1; k <= K; ++k) {
                Dyadic v = Dyadic::pow2(1 - 2 * k);
                if (k % 2 == 0) v.num = -v.num;
                s.a[k] = s.c[k] = v;
            }
            break;
        case SchemeKind::MS:
            // a: 1, -1, -1/2, then 2^(1-k); c_k = 2^(1-k)
            for (int k = 1; k <= K; ++k) s.c[k] = Dyadic::pow2(1 - k);
            if (K >= 1) s.a[1] = Dyadic::from_int(-1);
            if (K >= 2) s.a[2] = Dyadic{-1, 1};
            for (int k = 3; k <= K; ++k) s.a[k] = Dyadic::pow2(1 - k);
            break;
        case SchemeKind::EM: {
            // convolution of (1 -+ t)/(1 +- t) with (1 -+ t^3)/(1 +- t^3)
            std::vector<long long> ap(K + 1, 0), cp(K + 1, 0), app(K + 1, 0);
            ap[0] = cp[0] = app[0] = 1;
            for (int i = 1; i <= K; ++i) {
                ap[i] = (i % 2 == 0) ? 2 : -2;
                cp[i] = 2;
            }
            for (int j = 1; 3 * j <= K; ++j) app[3 * j] = (j % 2 == 0) ? 2 : -2;
            for (int k = 1; k <= K; ++k) {
                long long av = 0, cv = 0;
                for (int i = 0; i <= k; ++i) {
                    av += ap[i] * app[k - i];
                    cv += cp[i] * app[k - i];
                }
                s.a[k] = Dyadic::from_int(av);
                s.c[k] = Dyadic::from_int(cv);
            }
            break;
        }
    }
    return s;
}

std::vector<double> to_double(const std::vector<Dyadic>& v) {
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].to_double();
    return out;
}

constexpr int kExactOrderCap = 26;

}  // namespace

CoefficientExtractor::CoefficientExtractor(SchemeKind kind, const Microstructure& micro,
                                           GreenVariant variant, Vec2 load)
    : kind_(kind),
      micro_(&micro),
      variant_(variant),
      load_(load),
      running_(RealVectorField2D::constant(micro.grid, load)) {}

void CoefficientExtractor::advance() {
    const int k = static_cast<int>(b_.size());
    // chi-weight: chi1 for B, chi' = 2 chi1 - 1 for MS and EM
    const double w1 = 1.0;
    const double w2 = (kind_ == SchemeKind::B) ? 0.0 : -1.0;
    RealVectorField2D weighted = scale_by_phase(*micro_, running_, w1, w2);
    const Vec2 mu = mean(weighted);
    const double proj = mu.x * load_.x + mu.y * load_.y;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;  // (-1)^(k-1)
    const double factor = (kind_ == SchemeKind::EM) ? 2.0 : 1.0;
    const double bk = factor * sign * proj;
    b_.push_back(bk);
    switch (kind_) {
        case SchemeKind::B: d_.push_back(bk); break;
        case SchemeKind::MS: d_.push_back(d_.back() + bk); break;
        case SchemeKind::EM: d_.push_back(d_.back() + bk + b_[k - 1]); break;
    }
    running_ = (kind_ == SchemeKind::EM) ? apply_h1(weighted, variant_)
                                         : apply_gamma1(weighted, variant_);
}

SeriesCoefficients numerical_coefficients(SchemeKind kind, const Microstructure& micro,
                                          GreenVariant variant, int K) {
    if (K < 1) throw std::invalid_argument("numerical_coefficients: K must be >= 1");
    CoefficientExtractor ex(kind, micro, variant);
    for (int k = 0; k < K; ++k) ex.advance();
    SeriesCoefficients out;
    out.kind = kind;
    out.source = SeriesCoefficients::Source::numerical;
    out.b = ex.b();
    out.d = ex.d();
    out.grid_n = micro.grid.n1;
    out.variant = variant;
    return out;
}

std::vector<double> sqrt_series(std::span<const double> a) {
    if (a.empty() || !(a[0] > 0.0))
        throw std::domain_error("sqrt_series: leading coefficient must be > 0");
    std::vector<double> b(a.size());
    b[0] = std::sqrt(a[0]);
    if (a.size() > 1) b[1] = a[1] / (2.0 * b[0]);
    for (std::size_t k = 2; k < a.size(); ++k) {
        // the convolution sum_{i=1}^{k-1} b_i b_{k-i} is symmetric in i <-> k-i
        double s = 0.0;
        for (std::size_t i = 1; i < k - i; ++i) s += b[i] * b[k - i];
        s *= 2.0;
        if (k % 2 == 0) s += b[k / 2] * b[k / 2];
        b[k] = (a[k] - s) / (2.0 * b[0]);
    }
    return b;
}

SeriesCoefficients analytic_obnosov(SchemeKind kind, int K) {
    if (K < 0) throw std::invalid_argument("analytic_obnosov: K must be >= 0");
    SeriesCoefficients out;
    out.kind = kind;
    out.source = SeriesCoefficients::Source::analytic;
    out.grid_n = 0;

    const int kExact = std::min(K, kExactOrderCap);
    const SchemeSeries head = squared_series(kind, kExact);
    const std::vector<Dyadic> b_exact = sqrt_series_exact(head.a);
    const std::vector<Dyadic> d_exact = sqrt_series_exact(head.c);

    if (K <= kExactOrderCap) {
        out.b = to_double(b_exact);
        out.d = to_double(d_exact);
        return out;
    }
    // long series in double (the 128-bit path would overflow); exact head
    // overwrites the low orders afterwards
    std::vector<double> a(K + 1), c(K + 1);
    {
        a[0] = c[0] = 1.0;
        switch (kind) {
            case SchemeKind::B:
                for (int k = 1; k <= K; ++k)
                    a[k] = c[k] = ((k % 2 == 1) ? 2.0 : -2.0) * std::pow(4.0, -k);
                break;
            case SchemeKind::MS:
                for (int k = 1; k <= K; ++k) c[k] = std::ldexp(1.0, 1 - k);
                a[1] = -1.0;
                if (K >= 2) a[2] = -0.5;
                for (int k = 3; k <= K; ++k) a[k] = std::ldexp(1.0, 1 - k);
                break;
            case SchemeKind::EM: {
                std::vector<double> ap(K + 1, 0.0), cp(K + 1, 0.0), app(K + 1, 0.0);
                ap[0] = cp[0] = app[0] = 1.0;
                for (int i = 1; i <= K; ++i) {
                    ap[i] = (i % 2 == 0) ? 2.0 : -2.0;
                    cp[i] = 2.0;
                }
                for (int j = 1; 3 * j <= K; ++j) app[3 * j] = (j % 2 == 0) ? 2.0 : -2.0;
                for (int k = 1; k <= K; ++k) {
                    double av = 0.0, cv = 0.0;
                    for (int i = 0; i <= k; ++i) {
                        av += ap[i] * app[k - i];
                        cv += cp[i] * app[k - i];
                    }
                    a[k] = av;
                    c[k] = cv;
                }
                break;
            }
        }
    }
    out.b = sqrt_series(a);
    out.d = sqrt_series(c);
    for (int k = 0; k <= kExact; ++k) {
        out.b[k] = b_exact[k].to_double();
        out.d[k] = d_exact[k].to_double();
    }
    return out;
}

double obnosov_exact(double z) {
    if (z == -3.0 || (z > -3.0 && z < -1.0 / 3.0))
        throw std::domain_error("obnosov_exact: z inside the branch interval [-3, -1/3]");
    return std::sqrt((1.0 + 3.0 * z) / (3.0 + z));
}

PartialSum partial_sum_error(const SeriesCoefficients& coeffs, double z, int n) {
    if (n < 0 || n >= static_cast<int>(coeffs.d.size()))
        throw std::invalid_argument("partial_sum_error: order exceeds available coefficients");
    const double t = scheme_params(coeffs.kind, z).t;
    double sum = 0.0, tk = 1.0;
    for (int k = 0; k <= n; ++k) {
        sum += coeffs.d[k] * tk;
        tk *= t;
    }
    PartialSum out;
    out.estimate = sum;
    out.error = std::abs(sum - obnosov_exact(z));
    return out;
}

}  // namespace homog
