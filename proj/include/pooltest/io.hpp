#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "pooltest/asymptotics.hpp"
#include "pooltest/dist.hpp"
#include "pooltest/exact.hpp"
#include "pooltest/sim.hpp"
#include "pooltest/sparse_poly.hpp"

namespace pooltest::io {

enum class Rounding {
    kHalfAwayFromZero,  // conventional table rounding
    kHalfToEven,
};

/// Round to `precision` decimal places under the given tie rule.
double round_to(double value, int precision, Rounding mode = Rounding::kHalfAwayFromZero);

/// Fixed-point decimal string with `precision` digits after the point.
std::string format_fixed(double value, int precision,
                         Rounding mode = Rounding::kHalfAwayFromZero);

// --- test-count distributions -------------------------------------------

void write_pmf_csv(const TestCountPmf& pmf, std::ostream& os, int precision = 17);
nlohmann::json pmf_to_json(const TestCountPmf& pmf, int precision = 17);

// --- moments --------------------------------------------------------------

void write_moments_csv(std::int64_t n, double q, const MomentPair& m, std::ostream& os,
                       int precision = 17);
nlohmann::json moments_to_json(std::int64_t n, double q, const MomentPair& m,
                               int precision = 17);

// --- mean polynomial -------------------------------------------------------

void write_poly_csv(const SparseQPoly& poly, std::ostream& os);
nlohmann::json poly_to_json(std::int64_t n, const SparseQPoly& poly);

// --- thresholds / break-even -----------------------------------------------

void write_thresholds_csv(const std::vector<ThresholdResult>& rows, std::ostream& os,
                          int precision = 17);
nlohmann::json thresholds_to_json(const std::vector<ThresholdResult>& rows,
                                  int precision = 17);

void write_breakeven_csv(const std::vector<BreakevenRow>& rows, std::ostream& os,
                         int precision = 17);
nlohmann::json breakeven_to_json(double q, const std::vector<BreakevenRow>& rows,
                                 int precision = 17);

// --- series constants --------------------------------------------------------

struct NamedSeries {
    std::string name;
    SeriesValue series;
};

void write_series_csv(const std::vector<NamedSeries>& rows, std::ostream& os,
                      int precision = 17);
nlohmann::json series_to_json(double q, const std::vector<NamedSeries>& rows,
                              int precision = 17);

// --- ratio tables ------------------------------------------------------------

void write_ratio_table_csv(const RatioTable& table, std::ostream& os, int precision,
                           Rounding mode = Rounding::kHalfAwayFromZero);
nlohmann::json ratio_table_to_json(const RatioTable& table, int precision,
                                   Rounding mode = Rounding::kHalfAwayFromZero);

void write_ratio_sweep_csv(const std::vector<double>& mu, std::ostream& os,
                           int precision = 17);
nlohmann::json ratio_sweep_to_json(double q, const std::vector<double>& mu,
                                   int precision = 17);

// --- simulation ---------------------------------------------------------------

/// Histogram rows (t, count) for observed test counts only.
void write_sim_csv(const SimBatchResult& result, std::ostream& os);
nlohmann::json sim_to_json(const SimBatchResult& result, int precision = 17);

void write_normality_csv(const NormalityReport& report, std::ostream& os,
                         int precision = 17);
nlohmann::json normality_to_json(const NormalityReport& report, int precision = 17);

void write_lln_csv(const std::vector<LlnRow>& rows, std::ostream& os, int precision = 17);
nlohmann::json lln_to_json(double q, const std::vector<LlnRow>& rows, int precision = 17);

// --- characteristic function ---------------------------------------------------

void write_cf_csv(double t, std::complex<double> value, std::ostream& os,
                  int precision = 17);
nlohmann::json cf_to_json(std::int64_t n, double q, double t, std::complex<double> value,
                          int precision = 17);

}  // namespace pooltest::io
