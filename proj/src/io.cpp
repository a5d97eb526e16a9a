#include "pooltest/io.hpp"

#include <cfenv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace pooltest::io {

namespace {

long double pow10l(int k) {
    long double r = 1.0L;
    while (k-- > 0) {
        r *= 10.0L;
    }
    return r;
}

}  // namespace

double round_to(double value, int precision, Rounding mode) {
    if (precision < 0 || precision > 17) {
        throw std::invalid_argument("round_to: precision must lie in [0, 17]");
    }
    const long double scale = pow10l(precision);
    const long double scaled = static_cast<long double>(value) * scale;
    if (std::abs(scaled) >= 9e17L) {
        return value;  // beyond exact integer range; leave as is
    }
    long double r;
    if (mode == Rounding::kHalfAwayFromZero) {
        r = (scaled >= 0.0L) ? std::floor(scaled + 0.5L) : std::ceil(scaled - 0.5L);
    } else {
        r = std::nearbyint(scaled);  // FE_TONEAREST: ties to even
    }
    return static_cast<double>(r / scale);
}

std::string format_fixed(double value, int precision, Rounding mode) {
    if (precision < 0 || precision > 17) {
        throw std::invalid_argument("format_fixed: precision must lie in [0, 17]");
    }
    const long double scale = pow10l(precision);
    const long double scaled = static_cast<long double>(value) * scale;
    if (std::abs(scaled) >= 9e17L || std::isnan(value)) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.*f", precision, value);
        return buf;
    }
    long double r;
    if (mode == Rounding::kHalfAwayFromZero) {
        r = (scaled >= 0.0L) ? std::floor(scaled + 0.5L) : std::ceil(scaled - 0.5L);
    } else {
        r = std::nearbyint(scaled);
    }
    const bool negative = r < 0.0L;
    std::int64_t units = static_cast<std::int64_t>(negative ? -r : r);
    const std::int64_t scale_int = static_cast<std::int64_t>(scale);
    std::string integral = std::to_string(units / scale_int);
    if (precision == 0) {
        return negative ? "-" + integral : integral;
    }
    std::string frac = std::to_string(units % scale_int);
    frac.insert(0, static_cast<std::size_t>(precision) - frac.size(), '0');
    std::string out = integral + "." + frac;
    return negative ? "-" + out : out;
}

namespace {

std::string sci(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", value);
    return buf;
}

}  // namespace

void write_pmf_csv(const TestCountPmf& pmf, std::ostream& os, int precision) {
    os << "t,probability\n";
    for (std::size_t t = 0; t < pmf.probs.size(); ++t) {
        os << t << "," << format_fixed(pmf.probs[t], precision) << "\n";
    }
}

nlohmann::json pmf_to_json(const TestCountPmf& pmf, int precision) {
    nlohmann::json j;
    j["n"] = pmf.n_samples;
    j["q"] = pmf.q_clean;
    nlohmann::json arr = nlohmann::json::array();
    for (const double p : pmf.probs) {
        arr.push_back(round_to(p, precision));
    }
    j["pmf"] = std::move(arr);
    return j;
}

void write_moments_csv(std::int64_t n, double q, const MomentPair& m, std::ostream& os,
                       int precision) {
    os << "n,q,mean,variance\n";
    os << n << "," << q << "," << format_fixed(m.mean, precision) << ","
       << format_fixed(m.variance, precision) << "\n";
}

nlohmann::json moments_to_json(std::int64_t n, double q, const MomentPair& m, int precision) {
    return {{"n", n},
            {"q", q},
            {"mean", round_to(m.mean, precision)},
            {"variance", round_to(m.variance, precision)}};
}

void write_poly_csv(const SparseQPoly& poly, std::ostream& os) {
    os << "exponent,coefficient\n";
    for (const auto& [e, c] : poly.terms()) {
        os << e << "," << c << "\n";
    }
}

nlohmann::json poly_to_json(std::int64_t n, const SparseQPoly& poly) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : poly.terms()) {
        terms.push_back({e, c});
    }
    return {{"n", n}, {"degree", poly.degree()}, {"terms", std::move(terms)}};
}

void write_thresholds_csv(const std::vector<ThresholdResult>& rows, std::ostream& os,
                          int precision) {
    os << "n,q_n,bracket_width\n";
    for (const auto& r : rows) {
        if (r.is_infinity) {
            os << "inf";
        } else {
            os << r.index;
        }
        os << "," << format_fixed(r.q_star, precision) << "," << sci(r.bracket_width) << "\n";
    }
}

nlohmann::json thresholds_to_json(const std::vector<ThresholdResult>& rows, int precision) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j;
        if (r.is_infinity) {
            j["n"] = "inf";
        } else {
            j["n"] = r.index;
        }
        j["q_n"] = round_to(r.q_star, precision);
        j["bracket_width"] = r.bracket_width;
        arr.push_back(std::move(j));
    }
    return arr;
}

void write_breakeven_csv(const std::vector<BreakevenRow>& rows, std::ostream& os,
                         int precision) {
    os << "n,ratio,beats_one_by_one\n";
    for (const auto& r : rows) {
        os << r.exponent << "," << format_fixed(r.ratio, precision) << ","
           << (r.beats_one_by_one ? "true" : "false") << "\n";
    }
}

nlohmann::json breakeven_to_json(double q, const std::vector<BreakevenRow>& rows,
                                 int precision) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.exponent},
                       {"ratio", round_to(r.ratio, precision)},
                       {"beats_one_by_one", r.beats_one_by_one}});
    }
    return {{"q", q}, {"rows", std::move(arr)}};
}

void write_series_csv(const std::vector<NamedSeries>& rows, std::ostream& os, int precision) {
    os << "quantity,value,tail_bound,terms_used\n";
    for (const auto& r : rows) {
        os << r.name << "," << format_fixed(r.series.value, precision) << ","
           << sci(r.series.tail_bound) << "," << r.series.terms_used << "\n";
    }
}

nlohmann::json series_to_json(double q, const std::vector<NamedSeries>& rows, int precision) {
    nlohmann::json j;
    j["q"] = q;
    for (const auto& r : rows) {
        j[r.name] = {{"value", round_to(r.series.value, precision)},
                     {"tail_bound", r.series.tail_bound},
                     {"terms_used", r.series.terms_used}};
    }
    return j;
}

void write_ratio_table_csv(const RatioTable& table, std::ostream& os, int precision,
                           Rounding mode) {
    os << "N";
    for (const double p : table.p_values) {
        os << ",p=" << p;
    }
    os << "\n";
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        os << table.n_values[i];
        for (const double v : table.ratios[i]) {
            os << "," << format_fixed(v, precision, mode);
        }
        os << "\n";
    }
}

nlohmann::json ratio_table_to_json(const RatioTable& table, int precision, Rounding mode) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < table.n_values.size(); ++i) {
        nlohmann::json ratios = nlohmann::json::array();
        for (const double v : table.ratios[i]) {
            ratios.push_back(round_to(v, precision, mode));
        }
        rows.push_back({{"n", table.n_values[i]}, {"ratios", std::move(ratios)}});
    }
    return {{"p", table.p_values}, {"rows", std::move(rows)}};
}

void write_ratio_sweep_csv(const std::vector<double>& mu, std::ostream& os, int precision) {
    os << "n,ratio\n";
    for (std::size_t n = 1; n < mu.size(); ++n) {
        os << n << "," << format_fixed(mu[n] / static_cast<double>(n), precision) << "\n";
    }
}

nlohmann::json ratio_sweep_to_json(double q, const std::vector<double>& mu, int precision) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 1; n < mu.size(); ++n) {
        rows.push_back({{"n", n}, {"ratio", round_to(mu[n] / static_cast<double>(n), precision)}});
    }
    return {{"q", q}, {"rows", std::move(rows)}};
}

void write_sim_csv(const SimBatchResult& result, std::ostream& os) {
    os << "t,count\n";
    for (std::size_t t = 0; t < result.histogram.size(); ++t) {
        if (result.histogram[t] != 0) {
            os << t << "," << result.histogram[t] << "\n";
        }
    }
}

nlohmann::json sim_to_json(const SimBatchResult& result, int precision) {
    nlohmann::json hist = nlohmann::json::object();
    for (std::size_t t = 0; t < result.histogram.size(); ++t) {
        if (result.histogram[t] != 0) {
            hist[std::to_string(t)] = result.histogram[t];
        }
    }
    return {{"n", result.n_samples},
            {"q", result.q_clean},
            {"trials", result.trials},
            {"seed", result.seed},
            {"histogram", std::move(hist)},
            {"mean", round_to(result.empirical_mean, precision)},
            {"variance", round_to(result.empirical_variance, precision)},
            {"m3", round_to(result.standardized_m3, precision)},
            {"m4", round_to(result.standardized_m4, precision)}};
}

void write_normality_csv(const NormalityReport& report, std::ostream& os, int precision) {
    os << "moment,observed,target,standard_error\n";
    const double observed[4] = {report.m1, report.m2, report.m3, report.m4};
    const double errors[4] = {report.se1, report.se2, report.se3, report.se4};
    for (int k = 0; k < 4; ++k) {
        os << "m" << (k + 1) << "," << format_fixed(observed[k], precision) << ","
           << NormalityReport::kTargets[k] << "," << sci(errors[k]) << "\n";
    }
}

nlohmann::json normality_to_json(const NormalityReport& report, int precision) {
    return {{"n", report.n_samples},
            {"q", report.q_clean},
            {"trials", report.trials},
            {"seed", report.seed},
            {"batches", report.batches},
            {"exact_mean", report.exact_mean},
            {"exact_sd", report.exact_sd},
            {"m1", round_to(report.m1, precision)},
            {"m2", round_to(report.m2, precision)},
            {"m3", round_to(report.m3, precision)},
            {"m4", round_to(report.m4, precision)},
            {"se1", report.se1},
            {"se2", report.se2},
            {"se3", report.se3},
            {"se4", report.se4},
            {"targets", {0.0, 1.0, 0.0, 3.0}}};
}

void write_lln_csv(const std::vector<LlnRow>& rows, std::ostream& os, int precision) {
    os << "n,mean_ratio,alpha1,gap\n";
    for (const auto& r : rows) {
        os << r.exponent << "," << format_fixed(r.mean_ratio, precision) << ","
           << format_fixed(r.alpha1_value, precision) << "," << sci(r.gap) << "\n";
    }
}

nlohmann::json lln_to_json(double q, const std::vector<LlnRow>& rows, int precision) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"n", r.exponent},
                       {"mean_ratio", round_to(r.mean_ratio, precision)},
                       {"alpha1", round_to(r.alpha1_value, precision)},
                       {"gap", r.gap}});
    }
    return {{"q", q}, {"rows", std::move(arr)}};
}

void write_cf_csv(double t, std::complex<double> value, std::ostream& os, int precision) {
    os << "t,re,im\n";
    os << t << "," << format_fixed(value.real(), precision) << ","
       << format_fixed(value.imag(), precision) << "\n";
}

nlohmann::json cf_to_json(std::int64_t n, double q, double t, std::complex<double> value,
                          int precision) {
    return {{"n", n},
            {"q", q},
            {"t", t},
            {"re", round_to(value.real(), precision)},
            {"im", round_to(value.imag(), precision)}};
}

}  // namespace pooltest::io
