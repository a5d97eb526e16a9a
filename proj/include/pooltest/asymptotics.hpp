#pragma once

#include <cstdint>
#include <vector>

#include "pooltest/core.hpp"

namespace pooltest {

/// Value of a truncated series together with a rigorous bound on the
/// truncation error.
struct SeriesValue {
    double value;
    double tail_bound;
    int terms_used;
};

/// Break-even clean-probability threshold.
struct ThresholdResult {
    int index;          // meaningful when !is_infinity
    bool is_infinity;
    double q_star;
    double bracket_width;
};

/// Limit of E[tests]/n along n = 2^k:
///   alpha1(q) = 2 - q/2 - (3/2) sum_{k>=1} q^(2^k) / 2^k,
/// strictly decreasing from alpha1(0) = 2. The tail after K terms is bounded
/// by (3/2) q^(2^(K+1)) 2^-K. q = 1 is a domain error (the endpoint value 0
/// is documented, not computed).
SeriesValue alpha1(double q, double tol);

/// alpha1(q^2) - 2 alpha1(q) - q^2 - q + 2; zero up to truncation bounds.
double alpha1_functional_residual(double q);

/// Limit of E[tests]/n along n = 2^k * m for odd m:
///   alpha_m(q) = (2 mu(m) + 2 - q^m) / (2m) - (3/2) sum_{k>=1} q^(2^k m) / (2^k m).
/// alpha_m(0) = 2 for every odd m; reduces to alpha1 at m = 1. Distinct odd m
/// give distinct functions, which is why E[tests]/n has no limit over all n.
SeriesValue alpha_m(std::int64_t m, double q, double tol);

/// Limiting variance constant lim Var[tests]/n along n = 2^k:
///   beta(q) = q(q+1)/2 + (6 - 3q/2) A - (17/2) B - (3/2) C with
///   A = sum q^(2^k), B = sum q^(2^k)/2^k,
///   C = sum (2 q^(2^k) + q^(2^(k-1))) * S_(k-1), S_j = sum_{i<=j} q^(2^i)/2^i.
/// beta(0) = 0 and beta(q) > 0 on (0, 1); q = 1 is a domain error (the
/// endpoint diverges).
SeriesValue beta(double q, double tol);

/// Unique q in (0, 1) where the expected test count at 2^n samples equals
/// 2^n, found by bisection on the strictly decreasing mean ratio.
ThresholdResult threshold_qn(int n);

/// Limit of the threshold sequence: the root of alpha1(q) = 1.
ThresholdResult threshold_q_infinity(double tol);

struct BreakevenRow {
    int exponent;           // n_samples = 2^exponent
    double ratio;           // E[tests] / 2^exponent
    bool beats_one_by_one;  // ratio < 1
};

/// Rows for exponents 0..n_max at fixed q.
std::vector<BreakevenRow> breakeven_report(double q, int n_max);

}  // namespace pooltest
