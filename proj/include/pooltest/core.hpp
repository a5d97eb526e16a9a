#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pooltest {

/// Thrown when a request exceeds a documented size cap.
class ResourceLimitError : public std::runtime_error {
public:
    explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a computed quantity violates a numeric sanity bound
/// (e.g. a probability vector that fails to normalize).
class NumericIntegrityError : public std::runtime_error {
public:
    explicit NumericIntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Problem instance: n_samples specimens, each independently clean with
/// probability q_clean (contaminated with probability 1 - q_clean).
struct SchemeParams {
    std::int64_t n_samples;
    double q_clean;

    SchemeParams(std::int64_t n, double q);

    double p_contaminated() const { return 1.0 - q_clean; }
};

/// Halved group sizes: lo = floor(n/2), hi = ceil(n/2), lo + hi = n.
struct SplitPair {
    std::int64_t lo;
    std::int64_t hi;

    friend bool operator==(const SplitPair&, const SplitPair&) = default;
};

/// Split a group of n >= 2 into its two halves.
SplitPair split(std::int64_t n);

/// k-fold iterated floor-halving: iterate_iota(n, 0) == n,
/// iterate_iota(n, k) == floor(n / 2^k).
std::int64_t iterate_iota(std::int64_t n, int k);

/// q^m by repeated squaring, m >= 0. Underflow to 0 for huge m is accepted
/// (the true value is far below the double range). All modules share this
/// routine so that algebraically equal powers are bit-identical.
double pow_q(double q, std::int64_t m);

/// The set of distinct group sizes reachable from n by repeated halving:
/// the smallest split-closed set containing n. Sorted ascending, always
/// contains 1 and n, and has at most two members per halving level, so its
/// size is O(log n). Serves as the memoization key set for the
/// divide-and-conquer recursions.
class SizeLattice {
public:
    explicit SizeLattice(std::int64_t n);

    const std::vector<std::int64_t>& sizes() const { return sizes_; }
    std::size_t count() const { return sizes_.size(); }

    /// Position of `size` in the ascending size list; throws std::out_of_range
    /// if the size is not in the lattice.
    std::size_t index_of(std::int64_t size) const;

private:
    std::vector<std::int64_t> sizes_;
};

}  // namespace pooltest
