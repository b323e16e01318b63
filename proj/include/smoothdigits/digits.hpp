#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "smoothdigits/errors.hpp"

namespace smoothdigits {

using Base = std::uint64_t;

/// One nonzero digit of a positional expansion.
struct DigitTerm {
    std::uint64_t exponent;
    std::uint64_t digit;

    friend bool operator==(const DigitTerm&, const DigitTerm&) = default;
};

/// Sparse base-b expansion of a positive integer: only nonzero digits are
/// stored, ordered by strictly increasing exponent.
class DigitExpansion {
public:
    /// Validates the term list (nonzero digits below the base, strictly
    /// increasing exponents, non-empty) and throws DomainError otherwise.
    DigitExpansion(Base base, std::vector<DigitTerm> terms);

    Base base() const noexcept { return base_; }
    const std::vector<DigitTerm>& terms() const noexcept { return terms_; }

    /// Number of nonzero digits (k).
    std::size_t size() const noexcept { return terms_.size(); }

    std::uint64_t top_exponent() const noexcept { return terms_.back().exponent; }
    std::uint64_t top_digit() const noexcept { return terms_.back().digit; }

    /// True when the integer is not a multiple of the base.
    bool not_multiple_of_base() const noexcept { return terms_.front().exponent == 0; }

    friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;

private:
    Base base_;
    std::vector<DigitTerm> terms_;
};

/// Full digit string, least significant digit first (zeros included).
std::vector<std::uint64_t> digits_lsb_first(const mpz_class& n, Base b);

DigitExpansion decompose(const mpz_class& n, Base b);
mpz_class recompose(const DigitExpansion& e);

std::size_t nz_count(const mpz_class& n, Base b);

/// Number of maximal runs of equal digits in the base-b string of n.
std::size_t block_count(const mpz_class& n, Base b);

/// Size hypothesis log n >= 2 log b (8 log b / log 2)^k that gates the
/// valuation chain of the linear-form trace. Double precision; returns false
/// when the two sides agree to within a few units of rounding.
bool satisfies_size_hypothesis(const mpz_class& n, Base b, unsigned k);

/// Natural logarithm of a positive big integer without overflow.
double log_of(const mpz_class& n);

}  // namespace smoothdigits
