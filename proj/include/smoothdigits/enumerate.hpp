#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include <gmpxx.h>

#include "smoothdigits/digits.hpp"
#include "smoothdigits/factor.hpp"

namespace smoothdigits {

/// Limits on how far a stream may run before next() reports exhaustion.
/// Unset fields are unlimited, except that digit-budget streams fall back to
/// kDefaultMaxTopExponent so an empty tail cannot spin forever.
struct StreamBudget {
    std::uint64_t max_emissions = UINT64_MAX;
    std::optional<mpz_class> max_value;
    std::optional<std::uint64_t> max_top_exponent;
};

inline constexpr std::uint64_t kDefaultMaxTopExponent = 4096;

/// Digit budget f(n) for the variable-sparsity sequence. When `monotone` is
/// set, f is assumed nondecreasing and the candidate digit count per round
/// is bounded by f at the top of the round; otherwise by `cap`.
struct DigitBudget {
    std::function<double(const mpz_class&)> f;
    bool monotone = true;
    unsigned cap = 8;
};

/// Base and either a fixed digit count k >= 2 or a digit budget f.
struct SparseSpec {
    Base base = 2;
    unsigned max_nonzero = 2;
    std::optional<DigitBudget> budget;

    static SparseSpec fixed(Base b, unsigned k);
    static SparseSpec variable(Base b, DigitBudget f);
};

/// Every value in [b^m, b^(m+1)) that is not a multiple of b and has at most
/// max_nz nonzero digits, sorted ascending.
std::vector<mpz_class> sparse_round(Base b, std::uint64_t m, unsigned max_nz);

/// Increasing stream of positive integers not divisible by b with at most k
/// nonzero base-b digits (or at most f(n) in variable mode). Generated round
/// by round on the top exponent; each round occupies [b^m, b^(m+1)), so
/// sorting inside a round gives the global order.
class SparseSequence {
public:
    explicit SparseSequence(SparseSpec spec, StreamBudget budget = {});

    std::optional<mpz_class> next();
    std::uint64_t emitted() const noexcept { return emitted_; }

private:
    bool fill_round();
    unsigned round_digit_limit(std::uint64_t m) const;

    SparseSpec spec_;
    StreamBudget budget_;
    std::uint64_t next_round_ = 0;
    std::uint64_t emitted_ = 0;
    std::deque<mpz_class> pending_;
    bool exhausted_ = false;
};

/// Bases a_1..a_k for the power-sum sequence a_1^n_1 + ... + a_k^n_k + 1.
struct PowerSumSpec {
    std::vector<unsigned long> bases;
    bool shared_divisor_check = true;

    /// Throws DomainError when k < 2, a base is zero, or the check is on and
    /// gcd(a_1..a_k) < 2.
    void validate() const;
};

/// Distinct values of a_1^n_1 + ... + a_k^n_k + 1 (all n_i >= 1), ascending.
/// Tuples are expanded from a min-heap keyed on value; a value is emitted when
/// it is popped and differs from the previous emission.
class PowerSumSequence {
public:
    explicit PowerSumSequence(PowerSumSpec spec, StreamBudget budget = {});

    std::optional<mpz_class> next();

private:
    struct Node {
        mpz_class value;
        std::vector<unsigned long> exps;
        std::size_t last;  // only coordinates >= last may be bumped
    };
    struct Greater {
        bool operator()(const Node& a, const Node& b) const { return a.value > b.value; }
    };

    void push(std::vector<unsigned long> exps, std::size_t last);

    PowerSumSpec spec_;
    StreamBudget budget_;
    std::priority_queue<Node, std::vector<Node>, Greater> heap_;
    std::optional<mpz_class> last_emitted_;
    std::uint64_t emitted_ = 0;
};

/// All products of powers of the given primes up to limit, ascending, 1 first.
class SmoothSequence {
public:
    SmoothSequence(const PrimeSet& primes, mpz_class limit);

    std::optional<mpz_class> next();

private:
    std::vector<mpz_class> primes_;
    mpz_class limit_;
    std::vector<mpz_class> values_;
    std::vector<std::size_t> cursor_;
    std::vector<mpz_class> candidate_;
    std::size_t emitted_ = 0;
};

template <class Stream>
std::vector<mpz_class> take(Stream& s, std::size_t count) {
    std::vector<mpz_class> out;
    out.reserve(count);
    while (out.size() < count) {
        auto v = s.next();
        if (!v) break;
        out.push_back(std::move(*v));
    }
    return out;
}

}  // namespace smoothdigits
