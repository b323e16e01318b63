// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "oracles.hpp"
#include "smoothdigits/bounds.hpp"
#include "smoothdigits/digits.hpp"
#include "smoothdigits/enumerate.hpp"
#include "smoothdigits/experiments.hpp"
#include "smoothdigits/factor.hpp"

using namespace smoothdigits;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > limit_s) o.fail("over time limit");
    if (!o.ok) ++failures;
    std::printf("%s %2d %-34s %8.2fs (limit %gs)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, secs, limit_s,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
}

mpz_class random_below_bits(gmp_randclass& r, unsigned bits) {
    mpz_class n;
    do n = r.get_z_bits(bits);
    while (n == 0);
    return n;
}

// Exact log|z| for a nonzero rational.
double log_abs(const mpq_class& z) {
    auto lg = [](const mpz_class& v) {
        long e = 0;
        const double m = mpz_get_d_2exp(&e, v.get_mpz_t());
        return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
    };
    return lg(z.get_num()) - lg(z.get_den());
}

mpq_class power(const mpq_class& a, long e) {
    mpz_class num, den;
    const unsigned long u = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(num.get_mpz_t(), a.get_num_mpz_t(), u);
    mpz_pow_ui(den.get_mpz_t(), a.get_den_mpz_t(), u);
    mpq_class out = e < 0 ? mpq_class(den, num) : mpq_class(num, den);
    out.canonicalize();
    return out;
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

}  // namespace

int main() {
    criterion(1, "enumeration matches oracle", 10, [] {
        Outcome o;
        for (Base b : {2, 3, 10}) {
            for (unsigned k : {2u, 3u, 4u}) {
                SparseSequence seq(SparseSpec::fixed(b, k));
                const auto got = take(seq, 1000);
                const auto want = oracle::sparse_terms(b, k, 1000);
                if (got != want) o.fail("successor oracle mismatch b=" + std::to_string(b) + " k=" + std::to_string(k));
                // Literal filter of [1, M] wherever M is small enough to scan.
                if (want.back() <= 20'000'000) {
                    const auto lit = oracle::sparse_filter(b, k, want.back().get_ui());
                    if (lit != want) o.fail("filter mismatch b=" + std::to_string(b) + " k=" + std::to_string(k));
                }
            }
        }
        return o;
    });

    criterion(2, "digit round trip", 5, [] {
        Outcome o;
        gmp_randclass r(gmp_randinit_default);
        r.seed(2);
        for (int i = 0; i < 10000; ++i) {
            const mpz_class n = random_below_bits(r, 256);
            for (Base b : {2, 3, 10, 36}) {
                if (recompose(decompose(n, b)) != n) o.fail("recompose mismatch");
                if (nz_count(n * b, b) != nz_count(n, b)) o.fail("nz not shift invariant");
                if (nz_count(n, b) != oracle::nonzero_digits(n, b)) o.fail("nz disagrees with oracle");
            }
        }
        return o;
    });

    criterion(3, "factorization matches trial division", 60, [] {
        Outcome o;
        constexpr std::uint64_t limit = 10'000'000;
        const auto primes = oracle::primes_up_to(3163);
        constexpr std::uint64_t block = 200'000;
        std::vector<mpz_class> values;
        for (std::uint64_t lo = 1; lo <= limit && o.ok; lo += block) {
            const std::uint64_t hi = std::min(limit, lo + block - 1);
            values.clear();
            for (std::uint64_t n = lo; n <= hi; ++n) values.emplace_back(static_cast<unsigned long>(n));
            const auto fs = factorize_batch(values);
            for (std::uint64_t n = lo; n <= hi; ++n) {
                const auto& f = fs[n - lo];
                const auto want = oracle::trial_factor(n, primes);
                std::uint64_t p = 1, q = 1;
                for (const auto& [pr, e] : want) {
                    p = pr;
                    q *= pr;
                }
                if (!f.complete() || greatest_prime_factor(f) != p || omega(f) != want.size() || radical(f) != q) {
                    o.fail("mismatch at n=" + std::to_string(n));
                    break;
                }
            }
        }
        gmp_randclass r(gmp_randinit_default);
        r.seed(3);
        // Partial results are allowed here (budget contract); the cofactor must
        // then be composite and the product must still reconstruct n.
        std::size_t partial = 0;
        for (int i = 0; i < 10000 && o.ok; ++i) {
            const mpz_class n = random_below_bits(r, 96);
            const auto f = factorize(n);
            if (!f.complete()) {
                ++partial;
                if (is_probable_prime(f.cofactor())) o.fail("prime left in cofactor: " + n.get_str());
            }
            if (reconstruct(f) != n) o.fail("reconstruction failed: " + n.get_str());
            for (const auto& pp : f.pairs()) {
                if (!certify_prime(pp.prime)) o.fail("composite factor " + pp.prime.get_str());
            }
        }
        o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(partial) + " of 10000 random inputs partial";
        return o;
    });

    criterion(4, "trace suite on sparse survey", 300, [] {
        Outcome o;
        SurveyOptions opts;
        opts.base = 2;
        opts.k = 3;
        opts.terms = 500;
        std::size_t traced = 0;
        for (const auto& rec : sparse_survey(opts)) {
            if (!rec.factorization.complete() || rec.digits.size() < 2) continue;
            const auto t = trace_linear_forms(rec.value, 2, rec.factorization);
            ++traced;
            const auto digits = oracle::digits(rec.value, 2);
            std::vector<std::uint64_t> exps;
            for (std::size_t i = 0; i < digits.size(); ++i) {
                if (digits[i]) exps.push_back(i);
            }
            const std::uint64_t nk = exps.back(), nk1 = exps[exps.size() - 2];
            const Branch want = nk >= 2 * nk1 ? Branch::archimedean : Branch::p_adic;
            if (t.branch != want) o.fail("branch rule violated at " + rec.value.get_str());
            for (const auto& row : t.rows) {
                if (row.check == Check::archimedean_upper && !row.holds) o.fail("upper row fails at " + rec.value.get_str());
                if (row.check == Check::valuation_lower && row.link == 1 && !row.holds)
                    o.fail("first link fails at " + rec.value.get_str());
            }
            if (t.branch == Branch::archimedean) {
                bool has_upper = false;
                for (const auto& row : t.rows) has_upper |= row.check == Check::archimedean_upper;
                if (!has_upper) o.fail("missing upper row at " + rec.value.get_str());
                // Lambda_a = N / (d_k b^n_k) - 1 with d_k = 1 in base 2.
                mpz_class top;
                mpz_ui_pow_ui(top.get_mpz_t(), 2, nk);
                if (t.lambda != mpq_class(rec.value, top) - 1) o.fail("Lambda_a wrong at " + rec.value.get_str());
            } else {
                if (!t.p || !t.valuation) {
                    o.fail("p-adic trace without valuation at " + rec.value.get_str());
                    continue;
                }
                if (*t.valuation != oracle::valuation(t.lambda, static_cast<unsigned long>(*t.p)))
                    o.fail("valuation mismatch at " + rec.value.get_str());
                bool has_link1 = false;
                for (const auto& row : t.rows) has_link1 |= row.check == Check::valuation_lower && row.link == 1;
                if (!has_link1) o.fail("missing first link at " + rec.value.get_str());
            }
        }
        if (traced < 400) o.fail("only " + std::to_string(traced) + " terms traced");
        return o;
    });

    criterion(5, "certified bound direction", 30, [] {
        Outcome o;
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<long> part(1, 30), expo(-20, 20);
        const unsigned long small_primes[] = {2, 3, 5, 7, 11, 13};
        int done = 0;
        while (done < 200) {
            mpq_class a1(part(rng), part(rng)), a2(part(rng), part(rng));
            a1.canonicalize();
            a2.canonicalize();
            const long b1 = expo(rng), b2 = expo(rng);
            if (b1 == 0 || b2 == 0 || a1 == 1 || a2 == 1) continue;
            const mpq_class lambda = power(a1, b1) * power(a2, b2) - 1;
            if (lambda == 0) continue;
            const unsigned long p = small_primes[rng() % 6];
            bool unit = true;
            for (const auto& a : {a1, a2}) {
                unit &= mpz_divisible_ui_p(a.get_num_mpz_t(), p) == 0 && mpz_divisible_ui_p(a.get_den_mpz_t(), p) == 0;
            }
            if (!unit) continue;
            const auto in = BoundInput::minimal({a1, a2}, {b1, b2});
            if (matveev_lower_bound(in) > log_abs(lambda)) o.fail("Matveev above true log|Lambda|");
            if (yu_valuation_bound(in, mpz_class(p)) < static_cast<double>(oracle::valuation(lambda, p)))
                o.fail("Yu below true valuation");
            ++done;
        }
        return o;
    });

    criterion(6, "cyclotomic identity", 30, [] {
        Outcome o;
        for (std::uint64_t n = 1; n <= 200; ++n) {
            mpz_class prod = 1;
            for (std::uint64_t d = 1; d <= 2 * n; ++d) {
                if ((2 * n) % d == 0 && n % d != 0) prod *= oracle::evaluate(oracle::cyclotomic_poly(d), 2);
            }
            mpz_class want;
            mpz_ui_pow_ui(want.get_mpz_t(), 2, n);
            want += 1;
            if (prod != want) o.fail("oracle product differs at n=" + std::to_string(n));
            mpz_class lib = 1;
            for (std::uint64_t d = 1; d <= 2 * n; ++d) {
                if ((2 * n) % d == 0 && n % d != 0) {
                    if (cyclotomic_value(d, 2) != oracle::evaluate(oracle::cyclotomic_poly(d), 2))
                        o.fail("Phi_" + std::to_string(d) + "(2) differs");
                    lib *= cyclotomic_value(d, 2);
                }
            }
            if (lib != want) o.fail("library product differs at n=" + std::to_string(n));
        }
        const auto r = cyclotomic_smooth(12);
        if (!r.identity_holds || r.pieces.size() != 2 || r.pieces[0].value != 17 || r.pieces[1].value != 241)
            o.fail("n=12 pieces are not 17 and 241");
        return o;
    });

    criterion(7, "smooth stream", 1, [] {
        Outcome o;
        SmoothSequence seq(PrimeSet{2, 3, 5}, mpz_class(1000));
        const auto got = take(seq, 10);
        std::vector<mpz_class> want;
        for (unsigned long n = 1; want.size() < 10; ++n) {
            bool smooth = true;
            for (const auto& [p, e] : oracle::trial_factor(n)) smooth &= p <= 5;
            if (smooth) want.emplace_back(n);
        }
        if (got != want) o.fail("first ten differ");
        return o;
    });

    criterion(8, "threshold partiality", 1, [] {
        Outcome o;
        auto finite = [](const Threshold& t) { return !t.value() || std::isfinite(*t.value()); };
        const double ee = std::exp(std::exp(std::exp(1.0)));
        for (unsigned long n = 3; n <= 1'000'000; ++n) {
            const auto m = Magnitude::of(mpz_class(n));
            // Every n in range has L4 <= 0, so the fourth-log formulas must refuse.
            if (static_cast<double>(n) <= ee) {
                if (fixed_digit_gpf_threshold(m, 3, 0).applicable()) o.fail("fixed-digit applicable at " + std::to_string(n));
                if (power_sum_gpf_threshold(m, 2, 0).applicable()) o.fail("power-sum applicable at " + std::to_string(n));
            }
            if (!finite(s_unit_digit_threshold(m, 0)) || !finite(digit_budget_gpf_threshold(m, 1.0, 1.0, 0)) ||
                !finite(cyclotomic_min_exponent(m, mpz_class(2))))
                o.fail("non-finite value at " + std::to_string(n));
        }
        const double l1 = std::log(1e9), l2 = std::log(l1), l3 = std::log(l2), l4 = std::log(l3);
        const auto m9 = Magnitude::of(mpz_class(1'000'000'000));
        auto near = [&](const Threshold& t, double want, const char* what) {
            if (!t.value() || rel_err(*t.value(), want) > 1e-9) o.fail(std::string(what) + " off at 1e9");
        };
        near(fixed_digit_gpf_threshold(m9, 3, 0), l2 * l3 / l4, "fixed-digit k=3");
        near(fixed_digit_gpf_threshold(m9, 5, 0.1), (1.0 / 3 - 0.1) * l2 * l3 / l4, "fixed-digit k=5");
        near(power_sum_gpf_threshold(m9, 2, 0), l2 * l3 / l4, "power-sum k=2");
        near(s_unit_digit_threshold(m9, 0), l2 / l3, "s-unit digits");
        const double psi9 = l2 / 1.0;
        near(digit_budget_gpf_threshold(m9, 1.0, 1.0, 0), psi9 * std::log(psi9) / std::log(std::log(psi9)), "digit-budget");
        near(cyclotomic_min_exponent(m9, mpz_class(97)), std::log(97.0) * l3 / l1, "cyclotomic exponent");
        return o;
    });

    criterion(9, "gap nonnegative on survey", 300, [] {
        Outcome o;
        std::size_t checked = 0;
        for (unsigned k : {2u, 3u}) {
            SurveyOptions opts;
            opts.base = 2;
            opts.k = k;
            opts.terms = 500;
            opts.factor_budget.effort = 400'000;
            for (const auto& rec : sparse_survey(opts)) {
                if (!rec.factorization.complete() || rec.value < 16) continue;
                const auto g = digit_prime_gap(Magnitude::of(rec.value), k, *rec.gpf, *rec.omega, default_gap_constants(2));
                ++checked;
                if (!(g.gap >= 0)) o.fail("negative gap at " + rec.value.get_str());
            }
        }
        if (checked == 0) o.fail("no complete terms");
        o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(checked) + " complete terms";
        return o;
    });

    criterion(10, "Stewart survey smoke", 120, [] {
        Outcome o;
        const auto rows = stewart_survey(mpz_class(2), 3, 3, 2000);
        if (rows.size() != 1998) o.fail("row count " + std::to_string(rows.size()));
        for (const auto& row : rows) {
            mpz_class v;
            mpz_ui_pow_ui(v.get_mpz_t(), 2, row.n);
            if (row.nz != oracle::nonzero_digits(v, 3)) o.fail("nz mismatch at n=" + std::to_string(row.n));
            const double ln = std::log(static_cast<double>(row.n));
            if (row.exceeds != (static_cast<double>(row.nz) > ln / (2 * std::log(ln))))
                o.fail("exceeds flag inconsistent at n=" + std::to_string(row.n));
        }
        return o;
    });

    std::printf("%s\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED");
    return failures ? 1 : 0;
}
