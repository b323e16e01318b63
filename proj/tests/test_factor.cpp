#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "smoothdigits/factor.hpp"

using namespace smoothdigits;

namespace {

std::vector<std::pair<std::string, unsigned long>> pairs(const Factorization& f) {
    std::vector<std::pair<std::string, unsigned long>> out;
    for (const auto& pp : f.pairs()) out.emplace_back(pp.prime.get_str(), pp.exponent);
    return out;
}

mpz_class random_bits(std::mt19937_64& rng, unsigned bits) {
    mpz_class r = 0;
    for (unsigned i = 0; i < bits; i += 32) {
        r <<= 32;
        r += static_cast<unsigned long>(rng() & 0xffffffffu);
    }
    return r;
}

}  // namespace

TEST_CASE("factorize examples") {
    using P = std::vector<std::pair<std::string, unsigned long>>;
    CHECK(pairs(factorize(720)) == P{{"2", 4}, {"3", 2}, {"5", 1}});
    CHECK(pairs(factorize(4097)) == P{{"17", 1}, {"241", 1}});
    CHECK(factorize(1).pairs().empty());
    CHECK(factorize(1).complete());
    CHECK_THROWS_AS(factorize(0), DomainError);
}

TEST_CASE("P, omega, Q") {
    CHECK(greatest_prime_factor(mpz_class(1)) == 1);
    CHECK(greatest_prime_factor(mpz_class(33)) == 11);
    CHECK(greatest_prime_factor(mpz_class(4097)) == 241);
    CHECK(omega(mpz_class(12)) == 2);
    CHECK(omega(mpz_class(1)) == 0);
    CHECK(omega(mpz_class(720)) == 3);
    CHECK(radical(mpz_class(720)) == 30);
    CHECK(radical(mpz_class(8)) == 2);
    CHECK(radical(mpz_class(4097)) == 4097);
}

TEST_CASE("large inputs") {
    // 2^128 + 1 has a 17-digit smallest factor, beyond rho under the default
    // budget: the result must be an honest partial.
    mpz_class f7;
    mpz_ui_pow_ui(f7.get_mpz_t(), 2, 128);
    f7 += 1;
    const auto f = factorize(f7);
    CHECK_FALSE(f.complete());
    CHECK(reconstruct(f) == f7);
    CHECK(f.cofactor() % mpz_class("59649589127497217") == 0);
    CHECK_FALSE(is_probable_prime(f.cofactor()));

    const mpz_class semi = mpz_class("1099511627791") * mpz_class("2199023255579");
    // Two 41-bit factors: rho needs on the order of 10^7 effort units.
    CHECK(pairs(factorize(semi, FactorBudget{100'000'000})) == std::vector<std::pair<std::string, unsigned long>>{
                                        {"1099511627791", 1}, {"2199023255579", 1}});

    mpz_class n;  // 2^64 + 1 = 274177 * 67280421310721
    mpz_ui_pow_ui(n.get_mpz_t(), 2, 64);
    n += 1;
    CHECK(greatest_prime_factor(n) == mpz_class("67280421310721"));

    const mpz_class square = mpz_class("1000000000000000003") * mpz_class("1000000000000000003");
    CHECK(pairs(factorize(square)) ==
          std::vector<std::pair<std::string, unsigned long>>{{"1000000000000000003", 2}});
}

TEST_CASE("budget exhaustion is explicit") {
    // Product of two 100-bit primes is out of reach for a tiny budget.
    const mpz_class p("1267650600228229401496703205653");
    const mpz_class q("1267650600228229401496703205707");
    REQUIRE(certify_prime(p));
    REQUIRE(certify_prime(q));
    const auto f = factorize(p * q * 12, FactorBudget{1000});
    CHECK_FALSE(f.complete());
    CHECK(f.cofactor() == p * q);
    CHECK_FALSE(is_probable_prime(f.cofactor()));
    CHECK(reconstruct(f) == p * q * 12);
    CHECK_THROWS_AS(greatest_prime_factor(f), IncompleteFactorization);
    CHECK_THROWS_AS(omega(f), IncompleteFactorization);
    CHECK_THROWS_AS(radical(f), IncompleteFactorization);
}

TEST_CASE("primality against a sieve") {
    const auto primes = oracle::primes_up_to(200000);
    std::vector<bool> is_p(200001, false);
    for (auto p : primes) is_p[p] = true;
    for (std::uint64_t n = 0; n <= 200000; ++n) {
        CHECK(is_prime_u64(n) == is_p[n]);
        if (n >= 2) CHECK(is_probable_prime(mpz_class(static_cast<unsigned long>(n))) == is_p[n]);
    }
    // Strong pseudoprimes to several small bases.
    for (std::uint64_t n : {2047ull, 3215031751ull, 3825123056546413051ull}) CHECK_FALSE(is_prime_u64(n));
    CHECK_FALSE(is_probable_prime(mpz_class("318665857834031151167461")));
    CHECK_FALSE(is_probable_prime(mpz_class("3317044064679887385961981")));
    CHECK(is_probable_prime(mpz_class("170141183460469231731687303715884105727")));
}

TEST_CASE("agreement with trial division on a range") {
    for (std::uint64_t n = 1; n <= 200000; ++n) {
        const auto f = factorize(mpz_class(static_cast<unsigned long>(n)));
        const auto o = oracle::trial_factor(n);
        REQUIRE(f.pairs().size() == o.size());
        std::size_t i = 0;
        for (const auto& [p, e] : o) {
            CHECK(f.pairs()[i].prime == static_cast<unsigned long>(p));
            CHECK(f.pairs()[i].exponent == e);
            ++i;
        }
    }
}

TEST_CASE("reconstruction on random 96-bit inputs") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const mpz_class n = random_bits(rng, 96) + 1;
        const auto f = factorize(n);
        CHECK(reconstruct(f) == n);
        mpz_class last = 1;
        for (const auto& pp : f.pairs()) {
            CHECK(pp.prime > last);
            CHECK(certify_prime(pp.prime));
            CHECK(pp.exponent >= 1);
            last = pp.prime;
        }
    }
}

TEST_CASE("batch matches serial") {
    std::mt19937_64 rng(5);
    std::vector<mpz_class> values;
    for (int i = 0; i < 200; ++i) values.push_back(random_bits(rng, 80) + 2);
    const auto a = factorize_batch(values);
    const auto b = factorize_batch_serial(values);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(pairs(a[i]) == pairs(b[i]));
}

TEST_CASE("S-part and S-units") {
    const PrimeSet s23{2, 3};
    CHECK(s_part(720, s23) == 144);
    CHECK(s_part(7, s23) == 1);
    CHECK(s_part(144, s23) == 144);
    CHECK(is_s_unit(144, s23));
    CHECK_FALSE(is_s_unit(145, s23));
    CHECK(is_s_unit(1, s23));
    CHECK_THROWS_AS(PrimeSet({3, 2}), DomainError);
    CHECK_THROWS_AS(PrimeSet({2, 4}), DomainError);

    std::mt19937_64 rng(9);
    const PrimeSet s{2, 3, 5, 7};
    for (int i = 0; i < 500; ++i) {
        const mpz_class n = random_bits(rng, 64) + 1;
        const mpz_class part = s_part(n, s);
        CHECK(mpz_divisible_p(n.get_mpz_t(), part.get_mpz_t()));
        const mpz_class rest = n / part;
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) CHECK_FALSE(mpz_divisible_ui_p(rest.get_mpz_t(), p));
    }
}

TEST_CASE("smoothness") {
    CHECK(is_smooth(1, 0.5));
    CHECK(is_smooth(4097, 241));
    CHECK_FALSE(is_smooth(4097, 240));
    CHECK(is_smooth(4097, 240.9999) == false);
    for (unsigned long n = 2; n <= 20000; ++n) {
        const mpz_class p = greatest_prime_factor(mpz_class(n));
        CHECK(is_smooth(n, p.get_d()));
        CHECK_FALSE(is_smooth(n, p.get_d() - 1));
    }
    mpz_class big("67280421310721");
    CHECK(is_smooth(big * 274177, 67280421310721.0));
    CHECK_FALSE(is_smooth(big * 274177, 67280421310720.0));
}

TEST_CASE("p-adic valuations") {
    CHECK(p_adic_valuation(mpq_class(45, 7), 3) == 2);
    CHECK(p_adic_valuation(mpq_class(1, 8), 2) == -3);
    CHECK(p_adic_valuation(mpz_class(1088), 2) == 6);
    CHECK_THROWS_AS(p_adic_valuation(mpq_class(0), 2), DomainError);

    std::mt19937_64 rng(13);
    for (int i = 0; i < 1000; ++i) {
        const mpq_class x(static_cast<long>(rng() % 100000) + 1, static_cast<unsigned long>(rng() % 100000) + 1);
        const mpq_class y(static_cast<long>(rng() % 100000) + 1, static_cast<unsigned long>(rng() % 100000) + 1);
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul}) {
            mpq_class xc = x, yc = y;
            xc.canonicalize();
            yc.canonicalize();
            const long vx = p_adic_valuation(xc, p), vy = p_adic_valuation(yc, p);
            CHECK(vx == oracle::valuation(xc, p));
            mpq_class prod = xc * yc;
            CHECK(p_adic_valuation(prod, p) == vx + vy);
            mpq_class sum = xc + yc;
            if (sum != 0) CHECK(p_adic_valuation(sum, p) >= std::min(vx, vy));
        }
    }
}

TEST_CASE("smallest prime factor") {
    CHECK(smallest_prime_factor(2) == 2);
    CHECK(smallest_prime_factor(15) == 3);
    CHECK(smallest_prime_factor(91) == 7);
    CHECK(smallest_prime_factor(18446744073709551557ull) == 18446744073709551557ull);
}
