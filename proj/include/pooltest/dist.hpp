#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pooltest/core.hpp"

namespace pooltest {

inline constexpr std::int64_t kPgfMaxSamples = std::int64_t{1} << 14;
inline constexpr std::int64_t kBruteForceMaxSamples = 20;

/// Probability generating function E[z^T] of the test count at fixed numeric
/// q, as a polynomial in z of degree 2n - 1. coeff[t] is the probability of
/// exactly t tests; coeff[0] == 0.
struct PgfPoly {
    std::int64_t n_samples;
    double q_clean;
    std::vector<double> coeff;  // size 2 * n_samples

    double value_at(double z) const;
    std::int64_t degree() const { return static_cast<std::int64_t>(coeff.size()) - 1; }
};

/// Exact distribution of the test count on {1, ..., 2n-1}; probs[0] == 0.
/// Negative roundoff above -1e-12 has been clamped to zero (clamped_count
/// records how many coefficients were touched); the vector is never
/// renormalized.
struct TestCountPmf {
    std::int64_t n_samples;
    double q_clean;
    std::vector<double> probs;  // size 2 * n_samples
    int clamped_count = 0;

    double mean() const;
    double variance() const;
};

/// PGF by the halving recursion
///   g(z; n) = z g(z; lo) g(z; hi) + (z - z^2) q^lo g(z; hi) + (z - z^2) q^n,
/// g(z; 1) = z, lo = floor(n/2), hi = ceil(n/2), memoized over the size
/// lattice with schoolbook coefficient products. Capped at n <= 2^14.
PgfPoly pgf(const SchemeParams& params);

/// Coefficient extraction from the PGF with integrity checks: coefficients
/// below -1e-12 or a total off 1 by more than 1e-9 raise NumericIntegrityError.
TestCountPmf pmf(const SchemeParams& params);

/// Independent oracle: enumerate all 2^n contamination patterns, run the
/// deterministic test-count procedure on each, and accumulate
/// q^#clean * (1-q)^#contaminated. Capped at n <= 20.
TestCountPmf brute_force_pmf(const SchemeParams& params);

/// Characteristic function E[exp(i t T)] evaluated by the same recursion over
/// complex values directly (no polynomial expansion).
std::complex<double> cf_eval(const SchemeParams& params, double t);

/// True iff A <=_st B, i.e. P{A > x} <= P{B > x} + slack for all x.
bool st_dominates(const TestCountPmf& a, const TestCountPmf& b, double slack = 1e-9);

/// st_dominates restricted to distributions at the same q; mismatched q is an
/// invalid argument.
bool cdf_dominates(const TestCountPmf& a, const TestCountPmf& b);

namespace detail {

/// Clamp tiny negative roundoff (>= -1e-12) to zero and verify the vector
/// sums to 1 within 1e-9. Returns the number of clamped entries.
int validate_probability_vector(std::vector<double>& probs);

}  // namespace detail

}  // namespace pooltest
