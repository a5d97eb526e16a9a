#include "pooltest/conv.hpp"

#include <algorithm>
#include <stdexcept>

namespace pooltest {

namespace {

inline double dot_at(const std::vector<double>& a, const std::vector<double>& b,
                     std::size_t k) {
    const std::size_t ilo = k >= b.size() ? k - b.size() + 1 : 0;
    const std::size_t ihi = std::min(k, a.size() - 1);
    double acc = 0.0;
    for (std::size_t i = ilo; i <= ihi; ++i) {
        acc += a[i] * b[k - i];
    }
    return acc;
}

}  // namespace

std::vector<double> convolve_serial(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("convolve: inputs must be non-empty");
    }
    std::vector<double> out(a.size() + b.size() - 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = dot_at(a, b, k);
    }
    return out;
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("convolve: inputs must be non-empty");
    }
    std::vector<double> out(a.size() + b.size() - 1);
    const std::int64_t n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static) if (out.size() >= kConvolveParallelCutoff)
    for (std::int64_t k = 0; k < n; ++k) {
        out[static_cast<std::size_t>(k)] = dot_at(a, b, static_cast<std::size_t>(k));
    }
    return out;
}

}  // namespace pooltest
