#include "pooltest/exact.hpp"

#include <cmath>
#include <map>

namespace pooltest {

namespace detail {

std::vector<long double> mean_table(const SizeLattice& lattice, double q) {
    const auto& sizes = lattice.sizes();
    std::vector<long double> mu(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t s = sizes[i];
        if (s == 1) {
            mu[i] = 1.0L;
            continue;
        }
        const auto [lo, hi] = split(s);
        mu[i] = mu[lattice.index_of(lo)] + mu[lattice.index_of(hi)]
              - pow_q(q, s) - pow_q(q, lo) + 1.0L;
    }
    return mu;
}

std::vector<long double> variance_table(const SizeLattice& lattice, double q,
                                        const std::vector<long double>& mu) {
    const auto& sizes = lattice.sizes();
    std::vector<long double> var(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t s = sizes[i];
        if (s == 1) {
            var[i] = 0.0L;
            continue;
        }
        const auto [lo, hi] = split(s);
        const std::size_t ilo = lattice.index_of(lo);
        const std::size_t ihi = lattice.index_of(hi);
        const long double qs = pow_q(q, s);
        const long double qlo = pow_q(q, lo);
        var[i] = var[ilo] + var[ihi] + 2.0L * mu[i] * qs + 2.0L * mu[ilo] * qlo
               + pow_q(q, 2 * s) - pow_q(q, 2 * lo) - 3.0L * qs - qlo;
    }
    return var;
}

}  // namespace detail

double mean_recursive(const SchemeParams& params) {
    const SizeLattice lattice(params.n_samples);
    return static_cast<double>(detail::mean_table(lattice, params.q_clean).back());
}

double variance_recursive(const SchemeParams& params) {
    const SizeLattice lattice(params.n_samples);
    const auto mu = detail::mean_table(lattice, params.q_clean);
    return static_cast<double>(detail::variance_table(lattice, params.q_clean, mu).back());
}

MomentPair moments(const SchemeParams& params) {
    const SizeLattice lattice(params.n_samples);
    const auto mu = detail::mean_table(lattice, params.q_clean);
    const auto var = detail::variance_table(lattice, params.q_clean, mu);
    return {static_cast<double>(mu.back()), static_cast<double>(var.back())};
}

SparseQPoly mean_poly(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("mean_poly: n must be >= 1");
    }
    if (n > kMeanPolyMaxSamples) {
        throw ResourceLimitError("mean_poly: n exceeds the 2^20 cap");
    }
    const SizeLattice lattice(n);
    const auto& sizes = lattice.sizes();
    std::vector<SparseQPoly> poly(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t s = sizes[i];
        if (s == 1) {
            poly[i].add_term(0, 1);
            continue;
        }
        const auto [lo, hi] = split(s);
        SparseQPoly p = poly[lattice.index_of(lo)];
        p += poly[lattice.index_of(hi)];
        p.add_term(s, -1);
        p.add_term(lo, -1);
        p.add_term(0, 1);
        poly[i] = std::move(p);
    }
    return poly.back();
}

double mean_pow2_closed(int exponent, double q) {
    if (exponent < 0) {
        throw std::invalid_argument("mean_pow2_closed: exponent must be >= 0");
    }
    long double sum = 0.0L;
    double q_half = q;  // q^(2^(k-1))
    for (int k = 1; k <= exponent; ++k) {
        const double q_full = q_half * q_half;  // q^(2^k)
        sum += static_cast<long double>(q_full + q_half) * std::ldexp(1.0L, -k);
        q_half = q_full;
    }
    return static_cast<double>(std::ldexp(1.0L, exponent + 1) - 1.0L
                               - std::ldexp(sum, exponent));
}

double mean_pow2_ratio(int exponent, double q) {
    if (exponent < 0) {
        throw std::invalid_argument("mean_pow2_ratio: exponent must be >= 0");
    }
    long double sum = 0.0L;
    double q_half = q;
    for (int k = 1; k <= exponent; ++k) {
        const double q_full = q_half * q_half;
        sum += static_cast<long double>(q_full + q_half) * std::ldexp(1.0L, -k);
        q_half = q_full;
    }
    return static_cast<double>(2.0L - std::ldexp(1.0L, -exponent) - sum);
}

namespace {

// eps(m) = q^floor(m/2) - q^ceil(m/2) + q^m - q^(m+1), m >= 2
inline long double eps_mean(std::int64_t m, double q) {
    const std::int64_t lo = m / 2;
    const std::int64_t hi = m - lo;
    return static_cast<long double>(pow_q(q, lo)) - pow_q(q, hi)
         + pow_q(q, m) - pow_q(q, m + 1);
}

// Inner sum of eps over the halving chain m, m/2, m/4, ..., down to 2 or 3.
inline long double chain_sum(std::int64_t m, double q) {
    long double acc = 0.0L;
    while (m >= 2) {
        acc += eps_mean(m, q);
        m >>= 1;
    }
    return acc;
}

}  // namespace

double mean_explicit(std::int64_t n, double q) {
    if (n < 1) {
        throw std::invalid_argument("mean_explicit: n must be >= 1");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("mean_explicit: q must lie in [0, 1]");
    }
    if (n == 1) {
        return 1.0;
    }
    long double total = 2.0L * n - 1.0L - (n - 1.0L) * q - (n - 1.0L) * q * q;
    for (std::int64_t m = 2; m < n; ++m) {
        total += chain_sum(m, q);
    }
    return static_cast<double>(total);
}

std::vector<double> mean_explicit_sweep(std::int64_t n_max, double q) {
    if (n_max < 1) {
        throw std::invalid_argument("mean_explicit_sweep: n_max must be >= 1");
    }
    std::vector<double> mu(static_cast<std::size_t>(n_max) + 1, 0.0);
    mu[1] = 1.0;
    const long double delta1 = 2.0L - q - static_cast<long double>(q) * q;
    long double acc = 1.0L;
    for (std::int64_t m = 1; m < n_max; ++m) {
        // mu(m+1) - mu(m) = delta1 + sum of eps over the halving chain of m
        acc += delta1 + (m >= 2 ? chain_sum(m, q) : 0.0L);
        mu[static_cast<std::size_t>(m) + 1] = static_cast<double>(acc);
    }
    return mu;
}

double variance_pow2_closed(int exponent, double q) {
    if (exponent < 0) {
        throw std::invalid_argument("variance_pow2_closed: exponent must be >= 0");
    }
    long double s1 = 0.0L;  // sum (2 q^(2^k) + q^(2^(k-1)))
    long double s2 = 0.0L;  // sum (q^(2^(k+1)) + q^(3*2^(k-1)) - 5 q^(2^k) - 3 q^(2^(k-1))) / 2^k
    long double s3 = 0.0L;  // sum (2 q^(2^k) + q^(2^(k-1))) * inner_k
    long double inner = 0.0L;  // sum_{j<=k} (q^(2^j) + q^(2^(j-1))) / 2^j
    double q_half = q;
    for (int k = 1; k <= exponent; ++k) {
        const double q_full = q_half * q_half;      // q^(2^k)
        const double q_next = q_full * q_full;      // q^(2^(k+1))
        const double q_3half = q_half * q_half * q_half;  // q^(3*2^(k-1))
        inner += static_cast<long double>(q_full + q_half) * std::ldexp(1.0L, -k);
        const long double weight = 2.0L * q_full + q_half;
        s1 += weight;
        s2 += static_cast<long double>(q_next + q_3half - 5.0 * q_full - 3.0 * q_half)
              * std::ldexp(1.0L, -k);
        s3 += weight * inner;
        q_half = q_full;
    }
    return static_cast<double>(std::ldexp(s1, exponent + 1) + std::ldexp(s2 - s3, exponent));
}

namespace {

// eps_var(m) extends the mean-difference telescoping to the variance:
// the per-step correction in var(m+1) - var(m) = var(ceil) - var(floor) carry.
long double eps_var(std::int64_t m, double q, const std::vector<long double>& mu) {
    const std::int64_t lo = m / 2;
    const std::int64_t hi = m - lo;
    const long double qm = pow_q(q, m);
    const long double qlo = pow_q(q, lo);
    const long double qhi = pow_q(q, hi);
    return 2.0L * (mu[static_cast<std::size_t>(m) + 1] * q - mu[static_cast<std::size_t>(m)]) * qm
         + 2.0L * mu[static_cast<std::size_t>(hi)] * qhi
         - 2.0L * mu[static_cast<std::size_t>(lo)] * qlo
         + qlo - qhi + pow_q(q, 2 * lo) - pow_q(q, 2 * hi)
         + (3.0L - qm - pow_q(q, m + 1)) * qm * (1.0L - q);
}

}  // namespace

double variance_delta_explicit(std::int64_t n, double q) {
    if (n < 1) {
        throw std::invalid_argument("variance_delta_explicit: n must be >= 1");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("variance_delta_explicit: q must lie in [0, 1]");
    }
    if (n > kVarianceDeltaMaxSamples) {
        throw ResourceLimitError("variance_delta_explicit: n exceeds the 2^22 cap");
    }
    if (n == 1) {
        return 0.0;
    }
    // mu(1..n+1) via the halving recursion; dense table so chain lookups are O(1).
    std::vector<long double> mu(static_cast<std::size_t>(n) + 2);
    mu[1] = 1.0L;
    for (std::int64_t s = 2; s <= n + 1; ++s) {
        const std::int64_t lo = s / 2;
        const std::int64_t hi = s - lo;
        mu[static_cast<std::size_t>(s)] =
            mu[static_cast<std::size_t>(lo)] + mu[static_cast<std::size_t>(hi)]
            - pow_q(q, s) - pow_q(q, lo) + 1.0L;
    }
    const long double delta1 =
        q * (1.0L - q) * (static_cast<long double>(q) * q + 3.0L * q + 1.0L);
    long double var = 0.0L;  // var(1)
    for (std::int64_t m = 1; m < n; ++m) {
        long double delta = delta1;
        for (std::int64_t c = m; c >= 2; c >>= 1) {
            delta += eps_var(c, q, mu);
        }
        var += delta;
    }
    return static_cast<double>(var);
}

RatioTable ratio_table(const std::vector<std::int64_t>& n_values,
                       const std::vector<double>& p_values) {
    RatioTable table;
    table.n_values = n_values;
    table.p_values = p_values;
    table.ratios.reserve(n_values.size());
    for (const std::int64_t n : n_values) {
        std::vector<double> row;
        row.reserve(p_values.size());
        for (const double p : p_values) {
            const SchemeParams params(n, 1.0 - p);
            row.push_back(mean_recursive(params) / static_cast<double>(n));
        }
        table.ratios.push_back(std::move(row));
    }
    return table;
}

}  // namespace pooltest
