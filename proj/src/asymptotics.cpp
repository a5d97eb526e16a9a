#include "pooltest/asymptotics.hpp"

#include <cmath>

#include "pooltest/exact.hpp"

namespace pooltest {

namespace {

constexpr int kMaxTerms = 64;  // q^(2^64) underflows to 0 for every double q < 1

void check_series_args(double q, double tol) {
    if (q == 1.0) {
        throw std::domain_error("series constant: q = 1 is the documented endpoint, not computed");
    }
    if (!(q >= 0.0 && q < 1.0)) {
        throw std::invalid_argument("series constant: q must lie in [0, 1)");
    }
    if (!(tol >= 1e-18)) {
        throw std::invalid_argument("series constant: tol must be >= 1e-18");
    }
}

}  // namespace

SeriesValue alpha1(double q, double tol) {
    check_series_args(q, tol);
    long double sum = 0.0L;
    double q2k = q;  // q^(2^(k-1)) entering iteration k
    double tail = 0.0;
    int k = 0;
    do {
        ++k;
        q2k = q2k * q2k;  // q^(2^k)
        sum += static_cast<long double>(q2k) * std::ldexp(1.0L, -k);
        tail = 1.5 * (q2k * q2k) * std::ldexp(1.0, -k);
    } while (tail > tol && k < kMaxTerms);
    const double value = static_cast<double>(2.0L - 0.5L * q - 1.5L * sum);
    return {value, tail, k};
}

double alpha1_functional_residual(double q) {
    if (!(q >= 0.0 && q < 1.0)) {
        throw std::invalid_argument("alpha1_functional_residual: q must lie in [0, 1)");
    }
    const double lhs = alpha1(q * q, 1e-16).value;
    const double rhs = 2.0 * alpha1(q, 1e-16).value + q * q + q - 2.0;
    return lhs - rhs;
}

SeriesValue alpha_m(std::int64_t m, double q, double tol) {
    if (m < 1 || m % 2 == 0) {
        throw std::invalid_argument("alpha_m: m must be a positive odd integer");
    }
    check_series_args(q, tol);
    const double mu_m = mean_recursive(SchemeParams(m, q));
    const double q_m = pow_q(q, m);
    long double sum = 0.0L;
    double q2km = q_m;  // q^(2^(k-1) m)
    double tail = 0.0;
    int k = 0;
    do {
        ++k;
        q2km = q2km * q2km;  // q^(2^k m)
        sum += static_cast<long double>(q2km) * std::ldexp(1.0L, -k);
        tail = 1.5 * (q2km * q2km) * std::ldexp(1.0, -k) / static_cast<double>(m);
    } while (tail > tol && k < kMaxTerms);
    const double value = static_cast<double>(
        (2.0L * mu_m + 2.0L - q_m) / (2.0L * m) - 1.5L * sum / m);
    return {value, tail, k};
}

SeriesValue beta(double q, double tol) {
    check_series_args(q, tol);
    long double sum_a = 0.0L;   // sum q^(2^k)
    long double sum_b = 0.0L;   // sum q^(2^k)/2^k
    long double sum_c = 0.0L;   // sum (2 q^(2^k) + q^(2^(k-1))) S_(k-1)
    long double partial = 0.0L; // S_(k-1)
    double q_half = q;          // q^(2^(k-1))
    double tail = 0.0;
    int k = 0;
    const double inv_gap = (q > 0.0) ? 1.0 / (1.0 - q) : 0.0;
    do {
        ++k;
        const double q_full = q_half * q_half;  // q^(2^k)
        sum_c += (2.0L * q_full + q_half) * partial;
        sum_a += q_full;
        sum_b += static_cast<long double>(q_full) * std::ldexp(1.0L, -k);
        partial += static_cast<long double>(q_full) * std::ldexp(1.0L, -k);

        // Tails after k terms: exponents beyond 2^k (resp. 2^(k+1)) are
        // strictly increasing integers, so plain geometric sums dominate.
        const double r1 = (q_full * q_full) * inv_gap;              // sum_{j>k} q^(2^j)
        const double r0 = q_full * inv_gap;                          // sum_{j>=k} q^(2^j)
        const double tb = std::ldexp(q_full * q_full, -k);           // sum_{j>k} q^(2^j)/2^j
        const double s_ub = static_cast<double>(sum_b) + tb;         // S_inf upper bound
        tail = (6.0 - 1.5 * q) * r1 + 8.5 * tb + 1.5 * (2.0 * r1 + r0) * s_ub;
        q_half = q_full;
    } while (tail > tol && k < kMaxTerms);
    const double value = static_cast<double>(
        0.5L * q * (q + 1.0L) + (6.0L - 1.5L * q) * sum_a - 8.5L * sum_b - 1.5L * sum_c);
    return {value, tail, k};
}

ThresholdResult threshold_qn(int n) {
    if (n < 1) {
        throw std::invalid_argument("threshold_qn: n must be >= 1");
    }
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        // mean ratio is strictly decreasing in q; break-even when it hits 1
        if (mean_pow2_ratio(n, mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {n, false, 0.5 * (lo + hi), hi - lo};
}

ThresholdResult threshold_q_infinity(double tol) {
    if (!(tol >= 1e-11)) {
        throw std::invalid_argument("threshold_q_infinity: tol must be >= 1e-11");
    }
    constexpr double kEvalTol = 1e-15;
    double lo = 0.0;
    double hi = 1.0 - 1e-9;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (alpha1(mid, kEvalTol).value > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return {0, true, 0.5 * (lo + hi), hi - lo};
}

std::vector<BreakevenRow> breakeven_report(double q, int n_max) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("breakeven_report: q must lie in [0, 1]");
    }
    if (n_max < 0) {
        throw std::invalid_argument("breakeven_report: n_max must be >= 0");
    }
    std::vector<BreakevenRow> rows;
    rows.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        const double ratio = mean_pow2_ratio(n, q);
        rows.push_back({n, ratio, ratio < 1.0});
    }
    return rows;
}

}  // namespace pooltest
