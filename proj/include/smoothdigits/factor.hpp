#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "smoothdigits/errors.hpp"

namespace smoothdigits {

// ---------------------------------------------------------------------------
// Primality
//
// Below 2^64 Miller-Rabin with the seven Jaeschke/Sinclair bases is exact.
// Below 3.317e24 the first thirteen prime bases are exact (Sorenson-Webster).
// Above that, is_probable_prime runs the thirteen fixed bases plus
// kExtraRounds bases drawn from a generator seeded by n, and
// certify_prime additionally requires GMP's BPSW test to agree.
// ---------------------------------------------------------------------------

inline constexpr int kExtraRounds = 20;

bool is_probable_prime(const mpz_class& n);
bool is_prime_u64(std::uint64_t n);

/// Second, independent opinion used before any prime is reported.
bool certify_prime(const mpz_class& n);

/// Primes below 2^16, sieved once and shared read-only.
std::span<const std::uint32_t> small_primes();

// ---------------------------------------------------------------------------

/// Strictly increasing list of verified primes, s >= 1.
class PrimeSet {
public:
    explicit PrimeSet(std::vector<mpz_class> primes);
    PrimeSet(std::initializer_list<unsigned long> primes);

    const std::vector<mpz_class>& primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }
    const mpz_class& largest() const noexcept { return primes_.back(); }

private:
    std::vector<mpz_class> primes_;
};

struct PrimePower {
    mpz_class prime;
    unsigned long exponent;
};

/// Effort bound for factorize. One unit is roughly one modular
/// multiplication inside the splitting stages; trial division by the small
/// prime table is free.
struct FactorBudget {
    std::uint64_t effort = 4'000'000;
};

class Factorization {
public:
    Factorization() = default;
    Factorization(mpz_class n, std::vector<PrimePower> pairs, mpz_class cofactor);

    const mpz_class& n() const noexcept { return n_; }
    const std::vector<PrimePower>& pairs() const noexcept { return pairs_; }

    /// Unsplit composite part; 1 when the factorization is complete.
    const mpz_class& cofactor() const noexcept { return cofactor_; }
    bool complete() const noexcept { return cofactor_ == 1; }

    /// Throws IncompleteFactorization when a composite cofactor remains.
    void require_complete() const;

private:
    mpz_class n_ = 1;
    std::vector<PrimePower> pairs_;
    mpz_class cofactor_ = 1;
};

Factorization factorize(const mpz_class& n, FactorBudget budget = {});

/// Factor a batch in parallel (OpenMP, dynamic schedule). Output order
/// matches input order and is identical to factorize_batch_serial.
std::vector<Factorization> factorize_batch(std::span<const mpz_class> values, FactorBudget budget = {});
std::vector<Factorization> factorize_batch_serial(std::span<const mpz_class> values, FactorBudget budget = {});

mpz_class greatest_prime_factor(const Factorization& f);
std::size_t omega(const Factorization& f);
mpz_class radical(const Factorization& f);

mpz_class greatest_prime_factor(const mpz_class& n, FactorBudget budget = {});
std::size_t omega(const mpz_class& n, FactorBudget budget = {});
mpz_class radical(const mpz_class& n, FactorBudget budget = {});

/// Largest divisor of n supported on S (trial division by members of S only).
mpz_class s_part(const mpz_class& n, const PrimeSet& s);

/// All prime factors of n are at most bound. Divides out every prime up to
/// the bound and checks the remaining cofactor; no full factorization.
bool is_smooth(const mpz_class& n, double bound);

bool is_s_unit(const mpz_class& n, const PrimeSet& s);

/// v_p(z) for nonzero rational z; negative when p divides the denominator.
long p_adic_valuation(const mpq_class& z, const mpz_class& p);
long p_adic_valuation(const mpz_class& z, const mpz_class& p);

std::uint64_t smallest_prime_factor(std::uint64_t b);

/// Product of the pairs times the cofactor.
mpz_class reconstruct(const Factorization& f);

}  // namespace smoothdigits
