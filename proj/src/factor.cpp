#include "smoothdigits/factor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>

#include <omp.h>

namespace smoothdigits {

namespace {

constexpr std::uint32_t kSieveLimit = 1u << 16;

using u64 = std::uint64_t;
using u128 = unsigned __int128;

std::vector<std::uint32_t> sieve_primes(std::uint32_t limit) {
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = static_cast<u64>(i) * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool mr_round_u64(u64 n, u64 a, u64 d, int s) {
    a %= n;
    if (a == 0) return true;
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

bool mr_round(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long s) {
    const mpz_class nm1 = n - 1;
    mpz_class x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

constexpr std::uint32_t kFixedBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const mpz_class& deterministic_bound() {
    static const mpz_class bound("3317044064679887385961981");
    return bound;
}

// Pollard-Brent on 64-bit integers. Returns a nontrivial factor or 0.
u64 brent_u64(u64 n, u64 c, u64& effort) {
    u64 y = 2, x = 2, ys = 2, q = 1, g = 1;
    u64 r = 1;
    constexpr u64 m = 64;
    auto f = [&](u64 v) { return static_cast<u64>((static_cast<u128>(v) * v + c) % n); };
    do {
        x = y;
        for (u64 i = 0; i < r; ++i) y = f(y);
        u64 k = 0;
        while (k < r && g == 1) {
            ys = y;
            const u64 lim = std::min(m, r - k);
            for (u64 i = 0; i < lim; ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
            }
            g = std::gcd(q, n);
            k += m;
            const u64 spent = 2 * lim;
            if (effort <= spent) {
                effort = 0;
                if (g == 1) return 0;
            } else {
                effort -= spent;
            }
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = std::gcd(x > ys ? x - ys : ys - x, n);
        } while (g == 1);
    }
    return g == n ? 0 : g;
}

// Montgomery arithmetic modulo an odd n < 2^126, R = 2^128.
class Mont128 {
public:
    explicit Mont128(u128 n) : n_(n) {
        u128 inv = n;  // correct to 3 bits; each Newton step doubles that
        for (int i = 0; i < 7; ++i) inv *= 2 - n * inv;
        neg_inv_ = ~inv + 1;
    }

    u128 mul(u128 a, u128 b) const {
        u128 hi, lo;
        wide(a, b, hi, lo);
        const u128 m = lo * neg_inv_;
        u128 mhi, mlo;
        wide(m, n_, mhi, mlo);
        u128 r = hi + mhi + (lo != 0 ? 1 : 0);
        return r >= n_ ? r - n_ : r;
    }

    u128 add(u128 a, u128 b) const {
        const u128 r = a + b;
        return r >= n_ ? r - n_ : r;
    }

private:
    static void wide(u128 a, u128 b, u128& hi, u128& lo) {
        const u128 a0 = static_cast<u64>(a), a1 = a >> 64, b0 = static_cast<u64>(b), b1 = b >> 64;
        const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
        const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
        lo = (mid << 64) | static_cast<u64>(p00);
        hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    }

    u128 n_;
    u128 neg_inv_;
};

u128 to_u128(const mpz_class& z) {
    u128 out = 0;
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = limbs; i-- > 0;) out = (out << 64) | mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i));
    return out;
}

mpz_class from_u128(u128 v) {
    mpz_class out = static_cast<unsigned long>(v >> 64);
    out <<= 64;
    out += static_cast<unsigned long>(static_cast<u64>(v));
    return out;
}

int ctz128(u128 v) {
    const u64 lo = static_cast<u64>(v);
    return lo ? __builtin_ctzll(lo) : 64 + __builtin_ctzll(static_cast<u64>(v >> 64));
}

// Binary gcd; 128-bit division is a slow library call.
u128 gcd128(u128 a, u128 b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = ctz128(a | b);
    a >>= ctz128(a);
    do {
        b >>= ctz128(b);
        if (a > b) std::swap(a, b);
        b -= a;
    } while (b != 0);
    return a << shift;
}

// Pollard-Brent for odd composites below 2^126, iterating in Montgomery form.
std::optional<mpz_class> brent_u128(const mpz_class& nz, unsigned long c, std::uint64_t& effort) {
    const u128 n = to_u128(nz);
    const Mont128 mont(n);
    const u128 cc = c;
    u128 y = 2, x = 2, ys = 2, q = 1, g = 1;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto f = [&](u128 v) { return mont.add(mont.mul(v, v), cc); };
    auto dist = [](u128 a, u128 b) { return a > b ? a - b : b - a; };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) y = f(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                y = f(y);
                q = mont.mul(q, dist(x, y));
            }
            g = gcd128(q, n);
            k += m;
            const std::uint64_t spent = 2 * lim + r / m + 1;
            if (effort <= spent) {
                effort = 0;
                if (g == 1) return std::nullopt;
            } else {
                effort -= spent;
            }
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            ys = f(ys);
            g = gcd128(dist(x, ys), n);
        } while (g == 1);
    }
    if (g == n || g == 1) return std::nullopt;
    return from_u128(g);
}

std::optional<mpz_class> brent_mpz(const mpz_class& n, unsigned long c, std::uint64_t& effort) {
    mpz_class y = 2, x, ys, q = 1, g = 1, diff;
    std::uint64_t r = 1;
    constexpr std::uint64_t m = 128;
    auto step = [&](mpz_class& v) {
        mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
        mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
        mpz_tdiv_r(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
        x = y;
        for (std::uint64_t i = 0; i < r; ++i) step(y);
        std::uint64_t k = 0;
        while (k < r && g == 1) {
            ys = y;
            const std::uint64_t lim = std::min(m, r - k);
            for (std::uint64_t i = 0; i < lim; ++i) {
                step(y);
                mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
                mpz_tdiv_r(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
            const std::uint64_t spent = 2 * lim + r / m + 1;
            if (effort <= spent) {
                effort = 0;
                if (g == 1) return std::nullopt;
            } else {
                effort -= spent;
            }
        }
        r *= 2;
    } while (g == 1);
    if (g == n) {
        do {
            step(ys);
            mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n || g == 1) return std::nullopt;
    return g;
}

// Pollard p-1 stage one with bound b1.
std::optional<mpz_class> pminus1_mpz(const mpz_class& n, std::uint32_t b1, std::uint64_t& effort) {
    mpz_class a = 2, g;
    const double log_b1 = std::log(static_cast<double>(b1));
    for (auto p : small_primes()) {
        if (p > b1) break;
        unsigned long pe = p;
        const auto e = static_cast<unsigned long>(log_b1 / std::log(static_cast<double>(p)));
        for (unsigned long i = 1; i < e; ++i) pe *= p;
        mpz_powm_ui(a.get_mpz_t(), a.get_mpz_t(), pe, n.get_mpz_t());
        const auto spent = static_cast<std::uint64_t>(std::log2(static_cast<double>(pe))) + 1;
        if (effort <= spent) {
            effort = 0;
            break;
        }
        effort -= spent;
    }
    mpz_class am1 = a - 1;
    mpz_gcd(g.get_mpz_t(), am1.get_mpz_t(), n.get_mpz_t());
    if (g == 1 || g == n) return std::nullopt;
    return g;
}

// Largest e > 1 with n = r^e, or nullopt.
std::optional<std::pair<mpz_class, unsigned long>> perfect_power(const mpz_class& n) {
    if (!mpz_perfect_power_p(n.get_mpz_t())) return std::nullopt;
    const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    mpz_class root;
    for (unsigned long e = bits; e >= 2; --e) {
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), e) != 0) return std::make_pair(root, e);
    }
    return std::nullopt;
}

void add_prime(std::map<mpz_class, unsigned long>& acc, const mpz_class& p, unsigned long e) {
    acc[p] += e;
}

void factor_u64(u64 n, std::map<mpz_class, unsigned long>& acc, std::vector<mpz_class>& stuck,
                unsigned long mult, u64& effort) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        add_prime(acc, mpz_class(static_cast<unsigned long>(n)), mult);
        return;
    }
    for (u64 c = 1; c < 64; ++c) {
        if (effort == 0) break;
        const u64 d = brent_u64(n, c, effort);
        if (d != 0) {
            factor_u64(d, acc, stuck, mult, effort);
            factor_u64(n / d, acc, stuck, mult, effort);
            return;
        }
    }
    for (unsigned long i = 0; i < mult; ++i) stuck.emplace_back(static_cast<unsigned long>(n));
}

void factor_composite(const mpz_class& n, std::map<mpz_class, unsigned long>& acc, std::vector<mpz_class>& stuck,
                      unsigned long mult, std::uint64_t& effort) {
    if (n == 1) return;
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        factor_u64(n.get_ui(), acc, stuck, mult, effort);
        return;
    }
    if (is_probable_prime(n)) {
        add_prime(acc, n, mult);
        return;
    }
    if (auto pp = perfect_power(n)) {
        factor_composite(pp->first, acc, stuck, mult * pp->second, effort);
        return;
    }
    std::optional<mpz_class> d;
    const bool narrow = mpz_odd_p(n.get_mpz_t()) && mpz_sizeinbase(n.get_mpz_t(), 2) <= 126;
    // Below 2^126 native rho is cheap enough that p-1 does not pay for itself.
    if (!narrow && effort > 0) d = pminus1_mpz(n, 20000, effort);
    for (unsigned long c = 1; !d && effort > 0 && c < 64; ++c)
        d = narrow ? brent_u128(n, c, effort) : brent_mpz(n, c, effort);
    if (!d) {
        for (unsigned long i = 0; i < mult; ++i) stuck.push_back(n);
        return;
    }
    const mpz_class other = n / *d;
    factor_composite(*d, acc, stuck, mult, effort);
    factor_composite(other, acc, stuck, mult, effort);
}

}  // namespace

std::span<const std::uint32_t> small_primes() {
    static const std::vector<std::uint32_t> primes = sieve_primes(kSieveLimit);
    return primes;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    if (n < 37 * 37) return true;
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        if (!mr_round_u64(n, a, d, s)) return false;
    }
    return true;
}

bool is_probable_prime(const mpz_class& n) {
    if (n < 2) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime_u64(n.get_ui());
    for (auto p : kFixedBases) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    }
    mpz_class d = n - 1;
    const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (auto base : kFixedBases) {
        if (!mr_round(n, mpz_class(base), d, s)) return false;
    }
    if (n < deterministic_bound()) return true;

    // Bases derived from n so that results are reproducible.
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(n);
    const mpz_class span = n - 3;
    for (int i = 0; i < kExtraRounds; ++i) {
        const mpz_class a = rng.get_z_range(span) + 2;
        if (!mr_round(n, a, d, s)) return false;
    }
    return true;
}

bool certify_prime(const mpz_class& n) {
    if (!is_probable_prime(n)) return false;
    if (mpz_fits_ulong_p(n.get_mpz_t()) || n < deterministic_bound()) return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

PrimeSet::PrimeSet(std::vector<mpz_class> primes) : primes_(std::move(primes)) {
    if (primes_.empty()) throw DomainError("prime set must be non-empty");
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!certify_prime(primes_[i])) throw DomainError("prime set member is not prime: " + primes_[i].get_str());
        if (i > 0 && primes_[i - 1] >= primes_[i]) throw DomainError("prime set must be strictly increasing");
    }
}

PrimeSet::PrimeSet(std::initializer_list<unsigned long> primes)
    : PrimeSet([&] {
          std::vector<mpz_class> v;
          for (auto p : primes) v.emplace_back(p);
          return v;
      }()) {}

Factorization::Factorization(mpz_class n, std::vector<PrimePower> pairs, mpz_class cofactor)
    : n_(std::move(n)), pairs_(std::move(pairs)), cofactor_(std::move(cofactor)) {}

void Factorization::require_complete() const {
    if (!complete())
        throw IncompleteFactorization("factorization of " + n_.get_str() + " left composite cofactor " +
                                      cofactor_.get_str());
}

Factorization factorize(const mpz_class& n, FactorBudget budget) {
    if (n < 1) throw DomainError("factorize needs n >= 1");
    std::map<mpz_class, unsigned long> acc;
    std::vector<mpz_class> stuck;
    mpz_class rest = n;

    if (mpz_fits_ulong_p(rest.get_mpz_t())) {
        u64 r = rest.get_ui();
        for (auto p : small_primes()) {
            if (static_cast<u64>(p) * p > r) break;
            if (r % p == 0) {
                unsigned long e = 0;
                do {
                    r /= p;
                    ++e;
                } while (r % p == 0);
                acc.emplace(mpz_class(static_cast<unsigned long>(p)), e);
            }
        }
        rest = static_cast<unsigned long>(r);
    } else {
        for (auto p : small_primes()) {
            if (rest == 1) break;
            if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                unsigned long e = 0;
                do {
                    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                    ++e;
                } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
                acc.emplace(mpz_class(static_cast<unsigned long>(p)), e);
            }
            if (mpz_cmp_ui(rest.get_mpz_t(), static_cast<unsigned long>(p) * p) < 0) break;
        }
    }
    const unsigned long last = small_primes().back();
    if (rest > 1) {
        if (mpz_cmp_ui(rest.get_mpz_t(), last * last) < 0) {
            acc[rest] += 1;
        } else {
            std::uint64_t effort = budget.effort;
            factor_composite(rest, acc, stuck, 1, effort);
        }
    }

    std::vector<PrimePower> pairs;
    pairs.reserve(acc.size());
    mpz_class cofactor = 1;
    for (auto& [p, e] : acc) {
        // Primes below last^2 were proven by trial division.
        if (mpz_cmp_ui(p.get_mpz_t(), last * last) >= 0 && !certify_prime(p)) {
            // A reported prime must survive the second test; otherwise keep it
            // as an unsplit cofactor rather than report a pseudoprime.
            for (unsigned long i = 0; i < e; ++i) cofactor *= p;
            continue;
        }
        pairs.push_back({p, e});
    }
    for (const auto& c : stuck) cofactor *= c;
    return Factorization(n, std::move(pairs), std::move(cofactor));
}

std::vector<Factorization> factorize_batch_serial(std::span<const mpz_class> values, FactorBudget budget) {
    std::vector<Factorization> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(factorize(v, budget));
    return out;
}

std::vector<Factorization> factorize_batch(std::span<const mpz_class> values, FactorBudget budget) {
    std::vector<Factorization> out(values.size());
    (void)small_primes();
    const auto count = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) {
        out[static_cast<std::size_t>(i)] = factorize(values[static_cast<std::size_t>(i)], budget);
    }
    return out;
}

mpz_class reconstruct(const Factorization& f) {
    mpz_class acc = f.cofactor();
    mpz_class pe;
    for (const auto& [p, e] : f.pairs()) {
        mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
        acc *= pe;
    }
    return acc;
}

mpz_class greatest_prime_factor(const Factorization& f) {
    f.require_complete();
    return f.pairs().empty() ? mpz_class(1) : f.pairs().back().prime;
}

std::size_t omega(const Factorization& f) {
    f.require_complete();
    return f.pairs().size();
}

mpz_class radical(const Factorization& f) {
    f.require_complete();
    mpz_class r = 1;
    for (const auto& pp : f.pairs()) r *= pp.prime;
    return r;
}

mpz_class greatest_prime_factor(const mpz_class& n, FactorBudget budget) {
    return greatest_prime_factor(factorize(n, budget));
}

std::size_t omega(const mpz_class& n, FactorBudget budget) { return omega(factorize(n, budget)); }

mpz_class radical(const mpz_class& n, FactorBudget budget) { return radical(factorize(n, budget)); }

mpz_class s_part(const mpz_class& n, const PrimeSet& s) {
    if (n < 1) throw DomainError("s_part needs n >= 1");
    mpz_class rest = n;
    for (const auto& q : s.primes()) mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), q.get_mpz_t());
    return n / rest;
}

bool is_s_unit(const mpz_class& n, const PrimeSet& s) { return s_part(n, s) == n; }

bool is_smooth(const mpz_class& n, double bound) {
    if (n < 1) throw DomainError("is_smooth needs n >= 1");
    if (n == 1) return true;
    if (!(bound >= 2.0)) return false;
    mpz_class limit;
    if (std::isinf(bound)) return true;
    mpz_set_d(limit.get_mpz_t(), std::floor(bound));

    mpz_class rest = n;
    for (auto p : small_primes()) {
        if (limit < p) break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
            mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t());
        }
        if (rest == 1) return true;
    }
    if (rest <= limit) return true;
    if (limit < static_cast<unsigned long>(small_primes().back())) return false;
    if (is_probable_prime(rest)) return false;
    const auto f = factorize(rest);
    return greatest_prime_factor(f) <= limit;
}

long p_adic_valuation(const mpz_class& z, const mpz_class& p) {
    if (z == 0) throw DomainError("valuation of zero is undefined");
    if (p < 2) throw DomainError("valuation needs a prime");
    mpz_class rest = abs(z);
    return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.get_mpz_t()));
}

long p_adic_valuation(const mpq_class& z, const mpz_class& p) {
    if (z == 0) throw DomainError("valuation of zero is undefined");
    return p_adic_valuation(z.get_num(), p) - p_adic_valuation(z.get_den(), p);
}

std::uint64_t smallest_prime_factor(std::uint64_t b) {
    if (b < 2) throw DomainError("smallest_prime_factor needs b >= 2");
    for (auto p : small_primes()) {
        if (static_cast<std::uint64_t>(p) * p > b) return b;
        if (b % p == 0) return p;
    }
    const auto f = factorize(mpz_class(static_cast<unsigned long>(b)));
    return f.pairs().front().prime.get_ui();
}

}  // namespace smoothdigits
