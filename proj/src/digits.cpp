#include "smoothdigits/digits.hpp"

#include <cmath>
#include <limits>

namespace smoothdigits {

namespace {

constexpr Base kMaxStringBase = 62;

std::uint64_t char_digit(char c) {
    if (c >= '0' && c <= '9') return static_cast<std::uint64_t>(c - '0');
    if (c >= 'A' && c <= 'Z') return static_cast<std::uint64_t>(c - 'A' + 10);
    return static_cast<std::uint64_t>(c - 'a' + 36);
}

void require_base(Base b) {
    if (b < 2) throw DomainError("base must be at least 2");
    if (b > std::numeric_limits<unsigned long>::max())
        throw DomainError("base does not fit in a machine word");
}

void require_positive(const mpz_class& n) {
    if (sgn(n) <= 0) throw DomainError("integer must be positive");
}

}  // namespace

DigitExpansion::DigitExpansion(Base base, std::vector<DigitTerm> terms)
    : base_(base), terms_(std::move(terms)) {
    require_base(base_);
    if (terms_.empty()) throw DomainError("digit expansion needs at least one term");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const auto& t = terms_[i];
        if (t.digit == 0 || t.digit >= base_)
            throw DomainError("stored digits must lie in [1, base-1]");
        if (i > 0 && terms_[i - 1].exponent >= t.exponent)
            throw DomainError("exponents must be strictly increasing");
    }
}

std::vector<std::uint64_t> digits_lsb_first(const mpz_class& n, Base b) {
    require_base(b);
    require_positive(n);
    std::vector<std::uint64_t> out;
    if (b <= kMaxStringBase) {
        // mpz_get_str uses 0-9A-Za-z only above base 36; below it is lower case.
        const int gmp_base = b <= 36 ? -static_cast<int>(b) : static_cast<int>(b);
        const std::string s = n.get_str(gmp_base);
        out.reserve(s.size());
        for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back(char_digit(*it));
        return out;
    }
    mpz_class q = n;
    while (q != 0) {
        out.push_back(mpz_tdiv_q_ui(q.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(b)));
    }
    return out;
}

DigitExpansion decompose(const mpz_class& n, Base b) {
    const auto digits = digits_lsb_first(n, b);
    std::vector<DigitTerm> terms;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (digits[i] != 0) terms.push_back({i, digits[i]});
    }
    return DigitExpansion(b, std::move(terms));
}

mpz_class recompose(const DigitExpansion& e) {
    mpz_class acc = 0;
    mpz_class step;
    const auto& terms = e.terms();
    std::uint64_t prev = terms.back().exponent;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        mpz_ui_pow_ui(step.get_mpz_t(), static_cast<unsigned long>(e.base()), prev - it->exponent);
        acc *= step;
        acc += static_cast<unsigned long>(it->digit);
        prev = it->exponent;
    }
    mpz_ui_pow_ui(step.get_mpz_t(), static_cast<unsigned long>(e.base()), prev);
    acc *= step;
    return acc;
}

std::size_t nz_count(const mpz_class& n, Base b) {
    if (b == 2) return mpz_popcount(n.get_mpz_t());
    std::size_t count = 0;
    for (auto d : digits_lsb_first(n, b)) count += d != 0;
    return count;
}

std::size_t block_count(const mpz_class& n, Base b) {
    const auto digits = digits_lsb_first(n, b);
    std::size_t runs = 1;
    for (std::size_t i = 1; i < digits.size(); ++i) runs += digits[i] != digits[i - 1];
    return runs;
}

double log_of(const mpz_class& n) {
    require_positive(n);
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

bool satisfies_size_hypothesis(const mpz_class& n, Base b, unsigned k) {
    require_base(b);
    const double log_b = std::log(static_cast<double>(b));
    const double lhs = log_of(n);
    const double rhs = 2.0 * log_b * std::pow(8.0 * log_b / std::log(2.0), static_cast<double>(k));
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lhs), std::abs(rhs));
    return lhs - rhs > tol;
}

}  // namespace smoothdigits
