#include "pooltest/dist.hpp"

#include <cmath>
#include <utility>

#include "pooltest/conv.hpp"
#include "pooltest/sim.hpp"

namespace pooltest {

double PgfPoly::value_at(double z) const {
    long double acc = 0.0L;
    for (std::size_t i = coeff.size(); i-- > 0;) {
        acc = acc * z + coeff[i];
    }
    return static_cast<double>(acc);
}

double TestCountPmf::mean() const {
    long double acc = 0.0L;
    for (std::size_t t = 0; t < probs.size(); ++t) {
        acc += static_cast<long double>(t) * probs[t];
    }
    return static_cast<double>(acc);
}

double TestCountPmf::variance() const {
    const long double m = mean();
    long double acc = 0.0L;
    for (std::size_t t = 0; t < probs.size(); ++t) {
        const long double d = static_cast<long double>(t) - m;
        acc += d * d * probs[t];
    }
    return static_cast<double>(acc);
}

PgfPoly pgf(const SchemeParams& params) {
    if (params.n_samples > kPgfMaxSamples) {
        throw ResourceLimitError("pgf: n_samples exceeds the 2^14 cap");
    }
    const double q = params.q_clean;
    const SizeLattice lattice(params.n_samples);
    const auto& sizes = lattice.sizes();
    std::vector<std::vector<double>> g(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t s = sizes[i];
        if (s == 1) {
            g[i] = {0.0, 1.0};  // g(z; 1) = z
            continue;
        }
        const auto [lo, hi] = split(s);
        const auto& g_lo = g[lattice.index_of(lo)];
        const auto& g_hi = g[lattice.index_of(hi)];
        const std::vector<double> product = convolve(g_lo, g_hi);
        std::vector<double> out(static_cast<std::size_t>(2 * s), 0.0);
        for (std::size_t k = 0; k < product.size(); ++k) {
            out[k + 1] += product[k];  // z * g_lo * g_hi
        }
        const double q_lo = pow_q(q, lo);
        for (std::size_t j = 0; j < g_hi.size(); ++j) {
            const double c = q_lo * g_hi[j];  // (z - z^2) q^lo g_hi
            out[j + 1] += c;
            out[j + 2] -= c;
        }
        const double q_s = pow_q(q, s);  // (z - z^2) q^s
        out[1] += q_s;
        out[2] -= q_s;
        g[i] = std::move(out);
    }
    return {params.n_samples, q, std::move(g.back())};
}

namespace detail {

int validate_probability_vector(std::vector<double>& probs) {
    int clamped = 0;
    long double total = 0.0L;
    for (double& p : probs) {
        if (p < 0.0) {
            if (p < -1e-12) {
                throw NumericIntegrityError("pmf: coefficient below -1e-12");
            }
            p = 0.0;
            ++clamped;
        }
        total += p;
    }
    if (std::abs(static_cast<double>(total - 1.0L)) > 1e-9) {
        throw NumericIntegrityError("pmf: probabilities do not sum to 1 within 1e-9");
    }
    return clamped;
}

}  // namespace detail

TestCountPmf pmf(const SchemeParams& params) {
    PgfPoly g = pgf(params);
    const int clamped = detail::validate_probability_vector(g.coeff);
    return {params.n_samples, params.q_clean, std::move(g.coeff), clamped};
}

TestCountPmf brute_force_pmf(const SchemeParams& params) {
    const std::int64_t n = params.n_samples;
    if (n > kBruteForceMaxSamples) {
        throw ResourceLimitError("brute_force_pmf: n_samples exceeds the enumeration cap of 20");
    }
    const double q = params.q_clean;
    const double p = params.p_contaminated();
    std::vector<double> q_pow(static_cast<std::size_t>(n) + 1);
    std::vector<double> p_pow(static_cast<std::size_t>(n) + 1);
    for (std::int64_t k = 0; k <= n; ++k) {
        q_pow[static_cast<std::size_t>(k)] = pow_q(q, k);
        p_pow[static_cast<std::size_t>(k)] = pow_q(p, k);
    }
    std::vector<long double> acc(static_cast<std::size_t>(2 * n), 0.0L);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const ContaminationPattern pattern = ContaminationPattern::from_mask(n, mask);
        const std::int64_t tests = count_tests(pattern);
        const int contaminated = __builtin_popcountll(mask);
        acc[static_cast<std::size_t>(tests)] +=
            static_cast<long double>(p_pow[static_cast<std::size_t>(contaminated)]) *
            q_pow[static_cast<std::size_t>(n - contaminated)];
    }
    std::vector<double> probs(acc.begin(), acc.end());
    const int clamped = detail::validate_probability_vector(probs);
    return {n, q, std::move(probs), clamped};
}

std::complex<double> cf_eval(const SchemeParams& params, double t) {
    const double q = params.q_clean;
    const std::complex<double> z = std::polar(1.0, t);      // e^(it)
    const std::complex<double> z_minus_z2 = z - z * z;
    const SizeLattice lattice(params.n_samples);
    const auto& sizes = lattice.sizes();
    std::vector<std::complex<double>> phi(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const std::int64_t s = sizes[i];
        if (s == 1) {
            phi[i] = z;
            continue;
        }
        const auto [lo, hi] = split(s);
        const std::complex<double> phi_lo = phi[lattice.index_of(lo)];
        const std::complex<double> phi_hi = phi[lattice.index_of(hi)];
        phi[i] = z * phi_lo * phi_hi + z_minus_z2 * (pow_q(q, lo) * phi_hi + pow_q(q, s));
    }
    return phi.back();
}

bool st_dominates(const TestCountPmf& a, const TestCountPmf& b, double slack) {
    const std::size_t top = std::max(a.probs.size(), b.probs.size());
    long double tail_a = 0.0L;
    long double tail_b = 0.0L;
    for (std::size_t x = top; x-- > 1;) {
        tail_a += (x < a.probs.size()) ? a.probs[x] : 0.0;
        tail_b += (x < b.probs.size()) ? b.probs[x] : 0.0;
        if (tail_a > tail_b + slack) {
            return false;
        }
    }
    return true;
}

bool cdf_dominates(const TestCountPmf& a, const TestCountPmf& b) {
    if (a.q_clean != b.q_clean) {
        throw std::invalid_argument("cdf_dominates: distributions must share the same q");
    }
    return st_dominates(a, b);
}

}  // namespace pooltest
