#pragma once

#include <cstddef>
#include <vector>

namespace pooltest {

/// Output length below which the parallel kernel falls back to one thread.
inline constexpr std::size_t kConvolveParallelCutoff = std::size_t{1} << 12;

/// Schoolbook polynomial product, serial reference. Each output coefficient
/// is an independent dot product accumulated in ascending index order.
std::vector<double> convolve_serial(const std::vector<double>& a,
                                    const std::vector<double>& b);

/// OpenMP variant parallelized over output coefficients. Each coefficient is
/// computed by exactly one thread with the same summation order as the serial
/// kernel, so results are bit-identical to convolve_serial for any thread count.
std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b);

}  // namespace pooltest
