#include "pooltest/core.hpp"

#include <algorithm>

namespace pooltest {

SchemeParams::SchemeParams(std::int64_t n, double q) : n_samples(n), q_clean(q) {
    if (n < 1) {
        throw std::invalid_argument("SchemeParams: n_samples must be >= 1");
    }
    if (!(q >= 0.0 && q <= 1.0)) {
        throw std::invalid_argument("SchemeParams: q_clean must lie in [0, 1]");
    }
}

SplitPair split(std::int64_t n) {
    if (n < 2) {
        throw std::invalid_argument("split: n must be >= 2");
    }
    return {n / 2, n - n / 2};
}

std::int64_t iterate_iota(std::int64_t n, int k) {
    if (n < 1) {
        throw std::invalid_argument("iterate_iota: n must be >= 1");
    }
    if (k < 0) {
        throw std::invalid_argument("iterate_iota: k must be >= 0");
    }
    return k >= 63 ? 0 : n >> k;
}

double pow_q(double q, std::int64_t m) {
    if (m < 0) {
        throw std::invalid_argument("pow_q: exponent must be >= 0");
    }
    double result = 1.0;
    double base = q;
    while (m > 0) {
        if (m & 1) {
            result *= base;
        }
        base *= base;
        m >>= 1;
    }
    return result;
}

SizeLattice::SizeLattice(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("SizeLattice: n must be >= 1");
    }
    // Every size reachable at halving depth k lies in
    // {floor(n/2^k), ceil(n/2^k)}; walk the two chains down to 1.
    sizes_.push_back(n);
    std::int64_t lo = n;
    std::int64_t hi = n;
    while (hi > 1) {
        lo >>= 1;             // floor(lo / 2)
        hi = (hi + 1) >> 1;   // ceil(hi / 2)
        if (lo >= 1 && lo != hi) {
            sizes_.push_back(lo);
        }
        sizes_.push_back(hi);
    }
    std::sort(sizes_.begin(), sizes_.end());
    sizes_.erase(std::unique(sizes_.begin(), sizes_.end()), sizes_.end());
}

std::size_t SizeLattice::index_of(std::int64_t size) const {
    const auto it = std::lower_bound(sizes_.begin(), sizes_.end(), size);
    if (it == sizes_.end() || *it != size) {
        throw std::out_of_range("SizeLattice: size not in lattice");
    }
    return static_cast<std::size_t>(it - sizes_.begin());
}

}  // namespace pooltest
