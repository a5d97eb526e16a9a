#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "pooltest/core.hpp"

namespace pooltest {

/// Sparse polynomial in q with exact integer coefficients, stored as
/// (exponent, coefficient) pairs sorted by exponent. Zero coefficients are
/// never stored. Coefficients use int64: every polynomial produced here has
/// total coefficient mass bounded by 2n - 1 (see mean_poly), far inside the
/// representable range.
class SparseQPoly {
public:
    using Term = std::pair<std::int64_t, std::int64_t>;  // (exponent, coefficient)

    SparseQPoly() = default;

    const std::vector<Term>& terms() const { return terms_; }

    std::int64_t coeff(std::int64_t exponent) const {
        const auto it = find(exponent);
        return (it != terms_.end() && it->first == exponent) ? it->second : 0;
    }

    /// Largest exponent with a nonzero coefficient; -1 for the zero polynomial.
    std::int64_t degree() const { return terms_.empty() ? -1 : terms_.back().first; }

    void add_term(std::int64_t exponent, std::int64_t coefficient) {
        if (coefficient == 0) {
            return;
        }
        const auto it = find(exponent);
        if (it != terms_.end() && it->first == exponent) {
            it->second += coefficient;
            if (it->second == 0) {
                terms_.erase(it);
            }
        } else {
            terms_.insert(it, {exponent, coefficient});
        }
    }

    SparseQPoly& operator+=(const SparseQPoly& other) {
        for (const auto& [e, c] : other.terms_) {
            add_term(e, c);
        }
        return *this;
    }

    /// Sum of all coefficients, i.e. the value at q = 1.
    std::int64_t coeff_sum() const {
        std::int64_t s = 0;
        for (const auto& [e, c] : terms_) {
            s += c;
        }
        return s;
    }

    double eval(double q) const {
        double acc = 0.0;
        for (const auto& [e, c] : terms_) {
            acc += static_cast<double>(c) * pow_q(q, e);
        }
        return acc;
    }

    friend bool operator==(const SparseQPoly&, const SparseQPoly&) = default;

private:
    std::vector<Term>::iterator find(std::int64_t exponent) {
        return std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                [](const Term& t, std::int64_t e) { return t.first < e; });
    }
    std::vector<Term>::const_iterator find(std::int64_t exponent) const {
        return std::lower_bound(terms_.begin(), terms_.end(), exponent,
                                [](const Term& t, std::int64_t e) { return t.first < e; });
    }

    std::vector<Term> terms_;
};

}  // namespace pooltest
