#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "pooltest/core.hpp"
#include "pooltest/rng.hpp"

namespace pooltest {

/// Contamination status of every sample in a group, bit-packed
/// (true = contaminated).
class ContaminationPattern {
public:
    explicit ContaminationPattern(std::int64_t n);
    ContaminationPattern(std::initializer_list<bool> bits);

    /// Pattern of n <= 64 samples from the low n bits of `mask`
    /// (bit i = sample i contaminated).
    static ContaminationPattern from_mask(std::int64_t n, std::uint64_t mask);

    std::int64_t size() const { return n_; }
    bool contaminated(std::int64_t i) const;
    void set_contaminated(std::int64_t i, bool value);
    bool any_contaminated(std::int64_t begin, std::int64_t end) const;
    std::int64_t contaminated_count() const;

    /// Redraw every sample: contaminated with probability p, one generator
    /// draw per sample in index order.
    void sample(CounterRng& rng, double p);

private:
    std::int64_t n_;
    std::vector<std::uint64_t> words_;
};

/// Number of pool tests the binary-splitting procedure performs on the given
/// pattern. A group with unknown status costs one pool test; if it is
/// contaminated and has size >= 2 it is split, the left half (floor) is
/// probed first, and the right half is known-positive exactly when the left
/// half was clean. A known-positive group of size >= 2 is split without a
/// pool test of its own; a known-positive singleton costs nothing.
std::int64_t count_tests(const ContaminationPattern& pattern);

struct SimConfig {
    SchemeParams params;
    std::int64_t trials;
    std::uint64_t seed;
    /// Worker-thread request; 0 picks the POOLTEST_WORKERS environment
    /// variable, else the OpenMP default. Results never depend on it.
    int worker_hint = 0;
};

struct SimBatchResult {
    std::int64_t n_samples;
    double q_clean;
    std::int64_t trials;
    std::uint64_t seed;
    /// histogram[t] = number of trials that used exactly t tests; size 2n.
    std::vector<std::int64_t> histogram;
    double empirical_mean;
    double empirical_variance;
    /// Central moments of the empirical distribution scaled by the empirical
    /// standard deviation (0 when the sample is degenerate).
    double standardized_m3;
    double standardized_m4;
};

/// Monte Carlo batch: `trials` independent patterns, each drawn from its own
/// counter-based substream keyed by (seed, trial index). Bit-reproducible for
/// fixed (params, trials, seed) at any parallelism level because only integer
/// histograms are merged.
SimBatchResult run_batch(const SimConfig& config);

/// Single-threaded reference implementation with the identical contract;
/// kept for testing the parallel path against.
SimBatchResult run_batch_serial(const SimConfig& config);

/// Standardized-moment diagnostic against the normal targets (0, 1, 0, 3).
/// Counts are standardized by the exact mean and standard deviation, and
/// standard errors come from batch means. No verdict is attached.
struct NormalityReport {
    std::int64_t n_samples;
    double q_clean;
    std::int64_t trials;
    std::uint64_t seed;
    int batches;
    double exact_mean;
    double exact_sd;
    double m1, m2, m3, m4;      // observed standardized moments
    double se1, se2, se3, se4;  // batch-means standard errors
    static constexpr double kTargets[4] = {0.0, 1.0, 0.0, 3.0};
};

NormalityReport normality_diagnostic(const SimConfig& config, int batches = 100);

/// One row of the power-of-two law-of-large-numbers sweep.
struct LlnRow {
    int exponent;        // n_samples = 2^exponent
    double mean_ratio;   // empirical mean of T / 2^exponent
    double alpha1_value; // limit constant at this q
    double gap;          // |mean_ratio - alpha1_value|
};

std::vector<LlnRow> lln_convergence(double q, const std::vector<int>& exponents,
                                    std::int64_t trials, std::uint64_t seed);

namespace detail {

/// Resolve a worker hint: hint > 0 wins, else POOLTEST_WORKERS, else the
/// OpenMP default.
int resolve_workers(int worker_hint);

}  // namespace detail

}  // namespace pooltest
