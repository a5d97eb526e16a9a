#pragma once

#include <cstdint>
#include <vector>

#include "pooltest/core.hpp"
#include "pooltest/sparse_poly.hpp"

namespace pooltest {

/// Exact mean and variance of the test count.
struct MomentPair {
    double mean;
    double variance;
};

/// Expected test count mu(n; q) by the halving recursion
///   mu(n) = mu(floor(n/2)) + mu(ceil(n/2)) - q^n - q^floor(n/2) + 1,
/// mu(1) = 1, memoized over the size lattice. O(log n) time and space.
double mean_recursive(const SchemeParams& params);

/// Variance of the test count by the companion recursion
///   var(n) = var(floor(n/2)) + var(ceil(n/2)) + 2 mu(n) q^n
///          + 2 mu(floor(n/2)) q^floor(n/2)
///          + q^(2n) - q^(2 floor(n/2)) - 3 q^n - q^floor(n/2),
/// var(1) = 0.
double variance_recursive(const SchemeParams& params);

/// Mean and variance in one pass over the shared lattice.
MomentPair moments(const SchemeParams& params);

inline constexpr std::int64_t kMeanPolyMaxSamples = std::int64_t{1} << 20;

/// The exact integer-coefficient polynomial mu(n; q), built by running the
/// mean recursion in sparse-polynomial arithmetic. For n >= 2 the constant
/// term is 2n - 1, every other coefficient is <= 0, and the leading term is
/// -q^n. Capped at n <= 2^20.
SparseQPoly mean_poly(std::int64_t n);

/// Closed form for the mean at n_samples = 2^exponent:
///   E = 2^(e+1) - 1 - 2^e * sum_{k=1..e} (q^(2^k) + q^(2^(k-1))) / 2^k.
double mean_pow2_closed(int exponent, double q);

/// E / 2^exponent for the same closed form; safe for exponents where 2^e
/// itself would overflow the intermediate sums.
double mean_pow2_ratio(int exponent, double q);

/// Mean via the explicit double sum
///   mu(n) = 2n - 1 - (n-1)q - (n-1)q^2
///         + sum_{m=2..n-1} sum over the halving chain of m of eps(.),
///   eps(m) = q^floor(m/2) - q^ceil(m/2) + q^m - q^(m+1).
/// O(n log n) work; cross-check for mean_recursive.
double mean_explicit(std::int64_t n, double q);

/// mu(1..n_max) in one pass by accumulating the first-difference form of the
/// explicit formula. result[i] = mu(i; q); result[0] is unused (0).
std::vector<double> mean_explicit_sweep(std::int64_t n_max, double q);

/// Closed form for the variance at n_samples = 2^exponent.
double variance_pow2_closed(int exponent, double q);

inline constexpr std::int64_t kVarianceDeltaMaxSamples = std::int64_t{1} << 22;

/// Variance reconstructed by telescoping consecutive differences
/// var(m+1) - var(m), each expanded along the halving chain of m.
/// Independent route used to cross-check variance_recursive. O(n log n).
double variance_delta_explicit(std::int64_t n, double q);

/// Row-major table of mu(n; 1-p)/n for the given sample counts and
/// contamination probabilities: ratios[i][j] corresponds to
/// (n_values[i], p_values[j]).
struct RatioTable {
    std::vector<std::int64_t> n_values;
    std::vector<double> p_values;
    std::vector<std::vector<double>> ratios;
};

RatioTable ratio_table(const std::vector<std::int64_t>& n_values,
                       const std::vector<double>& p_values);

namespace detail {

/// mu over the lattice sizes, ascending, aligned with lattice.sizes().
std::vector<long double> mean_table(const SizeLattice& lattice, double q);

/// Variance over the lattice; `mu` must come from mean_table on the same lattice.
std::vector<long double> variance_table(const SizeLattice& lattice, double q,
                                        const std::vector<long double>& mu);

}  // namespace detail

}  // namespace pooltest
