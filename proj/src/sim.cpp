#include "pooltest/sim.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "pooltest/asymptotics.hpp"
#include "pooltest/exact.hpp"

namespace pooltest {

ContaminationPattern::ContaminationPattern(std::int64_t n)
    : n_(n), words_(static_cast<std::size_t>((n + 63) / 64), 0) {
    if (n < 1) {
        throw std::invalid_argument("ContaminationPattern: length must be >= 1");
    }
}

ContaminationPattern::ContaminationPattern(std::initializer_list<bool> bits)
    : ContaminationPattern(static_cast<std::int64_t>(bits.size())) {
    std::int64_t i = 0;
    for (const bool b : bits) {
        set_contaminated(i++, b);
    }
}

ContaminationPattern ContaminationPattern::from_mask(std::int64_t n, std::uint64_t mask) {
    if (n < 1 || n > 64) {
        throw std::invalid_argument("from_mask: n must lie in [1, 64]");
    }
    ContaminationPattern p(n);
    p.words_[0] = (n == 64) ? mask : (mask & ((std::uint64_t{1} << n) - 1));
    return p;
}

bool ContaminationPattern::contaminated(std::int64_t i) const {
    return (words_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1;
}

void ContaminationPattern::set_contaminated(std::int64_t i, bool value) {
    std::uint64_t& w = words_[static_cast<std::size_t>(i >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (i & 63);
    w = value ? (w | bit) : (w & ~bit);
}

bool ContaminationPattern::any_contaminated(std::int64_t begin, std::int64_t end) const {
    const std::size_t wa = static_cast<std::size_t>(begin >> 6);
    const std::size_t wb = static_cast<std::size_t>((end - 1) >> 6);
    const std::uint64_t first_mask = ~std::uint64_t{0} << (begin & 63);
    const std::uint64_t last_mask = ~std::uint64_t{0} >> (63 - ((end - 1) & 63));
    if (wa == wb) {
        return (words_[wa] & first_mask & last_mask) != 0;
    }
    if ((words_[wa] & first_mask) != 0) {
        return true;
    }
    for (std::size_t w = wa + 1; w < wb; ++w) {
        if (words_[w] != 0) {
            return true;
        }
    }
    return (words_[wb] & last_mask) != 0;
}

std::int64_t ContaminationPattern::contaminated_count() const {
    std::int64_t c = 0;
    for (const std::uint64_t w : words_) {
        c += __builtin_popcountll(w);
    }
    return c;
}

void ContaminationPattern::sample(CounterRng& rng, double p) {
    if (p >= 1.0) {
        for (auto& w : words_) {
            w = ~std::uint64_t{0};
        }
        const int rem = static_cast<int>(n_ & 63);
        if (rem != 0) {
            words_.back() = ~std::uint64_t{0} >> (64 - rem);
        }
        return;
    }
    const std::uint64_t threshold = bernoulli_threshold(p);
    std::int64_t i = 0;
    for (auto& word : words_) {
        std::uint64_t w = 0;
        const std::int64_t hi = std::min<std::int64_t>(64, n_ - i);
        for (std::int64_t b = 0; b < hi; ++b) {
            w |= static_cast<std::uint64_t>(rng.next() < threshold) << b;
        }
        word = w;
        i += 64;
    }
}

namespace {

struct ProbeResult {
    std::int64_t tests;
    bool contaminated;
};

std::int64_t split_and_descend(const ContaminationPattern& pat, std::int64_t a, std::int64_t b);

// Group [a, b) of unknown status: one pool test, then descend on a positive.
ProbeResult probe_unknown(const ContaminationPattern& pat, std::int64_t a, std::int64_t b) {
    const bool contaminated = pat.any_contaminated(a, b);
    if (!contaminated || b - a == 1) {
        return {1, contaminated};
    }
    return {1 + split_and_descend(pat, a, b), true};
}

// Group [a, b) known contaminated: a singleton is already identified (no
// test); a larger group is split without a pool test of its own.
std::int64_t resolve_known_positive(const ContaminationPattern& pat, std::int64_t a,
                                    std::int64_t b) {
    if (b - a == 1) {
        return 0;
    }
    return split_and_descend(pat, a, b);
}

std::int64_t split_and_descend(const ContaminationPattern& pat, std::int64_t a, std::int64_t b) {
    const std::int64_t mid = a + (b - a) / 2;  // left half has floor(size/2) samples
    const ProbeResult left = probe_unknown(pat, a, mid);
    if (left.contaminated) {
        return left.tests + probe_unknown(pat, mid, b).tests;
    }
    return left.tests + resolve_known_positive(pat, mid, b);
}

}  // namespace

std::int64_t count_tests(const ContaminationPattern& pattern) {
    return probe_unknown(pattern, 0, pattern.size()).tests;
}

namespace detail {

int resolve_workers(int worker_hint) {
    if (worker_hint > 0) {
        return worker_hint;
    }
    if (const char* env = std::getenv("POOLTEST_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    return omp_get_max_threads();
}

}  // namespace detail

namespace {

void validate_config(const SimConfig& config) {
    if (config.trials < 1) {
        throw std::invalid_argument("SimConfig: trials must be >= 1");
    }
}

void accumulate_trials(const SchemeParams& params, std::uint64_t seed, std::int64_t first,
                       std::int64_t last, std::vector<std::int64_t>& histogram) {
    const double p = params.p_contaminated();
    ContaminationPattern pattern(params.n_samples);
    for (std::int64_t trial = first; trial < last; ++trial) {
        CounterRng rng(seed, static_cast<std::uint64_t>(trial));
        pattern.sample(rng, p);
        ++histogram[static_cast<std::size_t>(count_tests(pattern))];
    }
}

SimBatchResult summarize(const SimConfig& config, std::vector<std::int64_t> histogram) {
    SimBatchResult r;
    r.n_samples = config.params.n_samples;
    r.q_clean = config.params.q_clean;
    r.trials = config.trials;
    r.seed = config.seed;
    r.histogram = std::move(histogram);

    const long double trials = static_cast<long double>(config.trials);
    long double mean = 0.0L;
    for (std::size_t t = 0; t < r.histogram.size(); ++t) {
        mean += static_cast<long double>(t) * r.histogram[t];
    }
    mean /= trials;
    long double m2 = 0.0L, m3 = 0.0L, m4 = 0.0L;
    for (std::size_t t = 0; t < r.histogram.size(); ++t) {
        if (r.histogram[t] == 0) {
            continue;
        }
        const long double d = static_cast<long double>(t) - mean;
        const long double w = static_cast<long double>(r.histogram[t]);
        m2 += w * d * d;
        m3 += w * d * d * d;
        m4 += w * d * d * d * d;
    }
    m2 /= trials;
    m3 /= trials;
    m4 /= trials;
    r.empirical_mean = static_cast<double>(mean);
    r.empirical_variance = static_cast<double>(m2);
    if (m2 > 0.0L) {
        const long double sd = std::sqrt(m2);
        r.standardized_m3 = static_cast<double>(m3 / (sd * sd * sd));
        r.standardized_m4 = static_cast<double>(m4 / (m2 * m2));
    } else {
        r.standardized_m3 = 0.0;
        r.standardized_m4 = 0.0;
    }
    return r;
}

}  // namespace

SimBatchResult run_batch_serial(const SimConfig& config) {
    validate_config(config);
    std::vector<std::int64_t> histogram(static_cast<std::size_t>(2 * config.params.n_samples), 0);
    accumulate_trials(config.params, config.seed, 0, config.trials, histogram);
    return summarize(config, std::move(histogram));
}

SimBatchResult run_batch(const SimConfig& config) {
    validate_config(config);
    const int workers = detail::resolve_workers(config.worker_hint);
    const std::size_t bins = static_cast<std::size_t>(2 * config.params.n_samples);
    std::vector<std::int64_t> histogram(bins, 0);
#pragma omp parallel num_threads(workers)
    {
        std::vector<std::int64_t> local(bins, 0);
        const double p = config.params.p_contaminated();
        ContaminationPattern pattern(config.params.n_samples);
#pragma omp for schedule(static) nowait
        for (std::int64_t trial = 0; trial < config.trials; ++trial) {
            CounterRng rng(config.seed, static_cast<std::uint64_t>(trial));
            pattern.sample(rng, p);
            ++local[static_cast<std::size_t>(count_tests(pattern))];
        }
#pragma omp critical
        {
            for (std::size_t t = 0; t < bins; ++t) {
                histogram[t] += local[t];
            }
        }
    }
    return summarize(config, std::move(histogram));
}

NormalityReport normality_diagnostic(const SimConfig& config, int batches) {
    validate_config(config);
    const MomentPair exact = moments(config.params);
    if (!(exact.variance > 0.0)) {
        throw std::domain_error(
            "normality_diagnostic: degenerate distribution (q in {0, 1} has zero variance)");
    }
    if (batches < 2) {
        throw std::invalid_argument("normality_diagnostic: batches must be >= 2");
    }
    if (batches > config.trials) {
        batches = static_cast<int>(config.trials);
    }
    const std::size_t bins = static_cast<std::size_t>(2 * config.params.n_samples);
    if (static_cast<std::size_t>(batches) * bins > (std::size_t{1} << 25)) {
        throw ResourceLimitError("normality_diagnostic: batches * bins exceeds the memory cap");
    }

    // Per-batch integer histograms keep the aggregation exact, so the report
    // is identical for any worker count.
    std::vector<std::int64_t> hist(static_cast<std::size_t>(batches) * bins, 0);
    const int workers = detail::resolve_workers(config.worker_hint);
#pragma omp parallel num_threads(workers)
    {
        std::vector<std::int64_t> local(hist.size(), 0);
        const double p = config.params.p_contaminated();
        ContaminationPattern pattern(config.params.n_samples);
#pragma omp for schedule(static) nowait
        for (std::int64_t trial = 0; trial < config.trials; ++trial) {
            CounterRng rng(config.seed, static_cast<std::uint64_t>(trial));
            pattern.sample(rng, p);
            const std::int64_t t = count_tests(pattern);
            const std::int64_t batch = trial * batches / config.trials;
            ++local[static_cast<std::size_t>(batch) * bins + static_cast<std::size_t>(t)];
        }
#pragma omp critical
        {
            for (std::size_t i = 0; i < hist.size(); ++i) {
                hist[i] += local[i];
            }
        }
    }

    const long double mu = exact.mean;
    const long double sd = std::sqrt(static_cast<long double>(exact.variance));
    std::vector<std::array<long double, 5>> batch_stats;  // [count, m1..m4 sums]
    batch_stats.assign(static_cast<std::size_t>(batches), {0.0L, 0.0L, 0.0L, 0.0L, 0.0L});
    for (int b = 0; b < batches; ++b) {
        auto& s = batch_stats[static_cast<std::size_t>(b)];
        for (std::size_t t = 0; t < bins; ++t) {
            const std::int64_t c = hist[static_cast<std::size_t>(b) * bins + t];
            if (c == 0) {
                continue;
            }
            const long double y = (static_cast<long double>(t) - mu) / sd;
            const long double w = static_cast<long double>(c);
            s[0] += w;
            s[1] += w * y;
            s[2] += w * y * y;
            s[3] += w * y * y * y;
            s[4] += w * y * y * y * y;
        }
    }

    NormalityReport report;
    report.n_samples = config.params.n_samples;
    report.q_clean = config.params.q_clean;
    report.trials = config.trials;
    report.seed = config.seed;
    report.batches = batches;
    report.exact_mean = exact.mean;
    report.exact_sd = static_cast<double>(sd);

    double* moments_out[4] = {&report.m1, &report.m2, &report.m3, &report.m4};
    double* se_out[4] = {&report.se1, &report.se2, &report.se3, &report.se4};
    for (int k = 1; k <= 4; ++k) {
        long double total = 0.0L;
        for (const auto& s : batch_stats) {
            total += s[static_cast<std::size_t>(k)];
        }
        const long double overall = total / static_cast<long double>(config.trials);
        long double ss = 0.0L;
        for (const auto& s : batch_stats) {
            const long double bm = s[static_cast<std::size_t>(k)] / s[0];
            ss += (bm - overall) * (bm - overall);
        }
        *moments_out[k - 1] = static_cast<double>(overall);
        *se_out[k - 1] = static_cast<double>(
            std::sqrt(ss / (static_cast<long double>(batches) *
                            static_cast<long double>(batches - 1))));
    }
    return report;
}

std::vector<LlnRow> lln_convergence(double q, const std::vector<int>& exponents,
                                    std::int64_t trials, std::uint64_t seed) {
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("lln_convergence: q must lie in [0, 1]");
    }
    if (trials < 1) {
        throw std::invalid_argument("lln_convergence: trials must be >= 1");
    }
    // alpha1(1) = 0 is the documented endpoint; the series evaluator refuses q = 1.
    const double alpha = (q < 1.0) ? alpha1(q, 1e-12).value : 0.0;
    std::vector<LlnRow> rows;
    rows.reserve(exponents.size());
    for (const int n : exponents) {
        if (n < 0 || n > 30) {
            throw std::invalid_argument("lln_convergence: exponent must lie in [0, 30]");
        }
        const std::int64_t samples = std::int64_t{1} << n;
        const SimConfig config{SchemeParams(samples, q), trials,
                               mix64(seed ^ static_cast<std::uint64_t>(n)), 0};
        const SimBatchResult batch = run_batch(config);
        const double ratio = batch.empirical_mean / static_cast<double>(samples);
        rows.push_back({n, ratio, alpha, std::abs(ratio - alpha)});
    }
    return rows;
}

}  // namespace pooltest
