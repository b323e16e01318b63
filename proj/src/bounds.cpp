#include "smoothdigits/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "mpfr_real.hpp"

namespace smoothdigits {

using detail::Real;

namespace {

// Nearest double to e; it lies just below e, so it is the largest double
// that can stand for "A_i = e".
const mpq_class& e_floor() {
    static const mpq_class v(2.718281828459045);
    return v;
}

Real lifted_height(const mpq_class& a) {
    return detail::max(Real::from_q(a, MPFR_RNDU), Real::euler(MPFR_RNDU));
}

mpz_class ipow(Base b, std::uint64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
    return r;
}

// Largest t with holds(t), assuming the set {t >= 0 : holds(t)} is an
// interval starting at 0. Returns an upper end, padded outward.
double largest_true(const std::function<bool(double)>& holds) {
    double lo = 0.0;
    double hi = 1.0;
    while (holds(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return hi * (1.0 + 1e-12) + 1e-12;
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundInput

mpq_class BoundInput::natural_height(const mpq_class& r) {
    mpq_class m = abs(r.get_num()) > r.get_den() ? mpq_class(abs(r.get_num())) : mpq_class(r.get_den());
    return m < e_floor() ? e_floor() : m;
}

BoundInput BoundInput::make(std::vector<mpq_class> rationals, std::vector<std::int64_t> exponents,
                            std::vector<mpq_class> heights, double exponent_bound) {
    const std::size_t n = rationals.size();
    if (n < 2) throw DomainError("linear form needs at least two terms");
    if (exponents.size() != n || heights.size() != n) throw DomainError("linear form data have mismatched lengths");

    double max_abs_exp = 3.0;
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        rationals[i].canonicalize();
        if (rationals[i] == 0) throw DomainError("linear form rationals must be nonzero");
        const mpz_class num = abs(rationals[i].get_num());
        const mpz_class& den = rationals[i].get_den();
        if (heights[i] < num || heights[i] < den || heights[i] < e_floor())
            throw DomainError("height must dominate max(|x_i|, |y_i|, e)");
        const auto mag = static_cast<double>(exponents[i] < 0 ? -exponents[i] : exponents[i]);
        max_abs_exp = std::max(max_abs_exp, mag);
        bits += static_cast<std::uint64_t>(mag) *
                (mpz_sizeinbase(num.get_mpz_t(), 2) + mpz_sizeinbase(den.get_mpz_t(), 2));
    }
    if (!(exponent_bound >= max_abs_exp)) throw DomainError("exponent bound must be at least max(3, |b_i|)");

    BoundInput in;
    in.exponents_ = std::move(exponents);
    in.heights_ = std::move(heights);
    in.exponent_bound_ = exponent_bound;

    if (bits <= (1u << 22)) {
        mpq_class prod = 1;
        for (std::size_t i = 0; i < n; ++i) {
            const auto e = in.exponents_[i];
            const auto mag = static_cast<unsigned long>(e < 0 ? -e : e);
            mpz_class num, den;
            mpz_pow_ui(num.get_mpz_t(), rationals[i].get_num_mpz_t(), mag);
            mpz_pow_ui(den.get_mpz_t(), rationals[i].get_den_mpz_t(), mag);
            mpq_class term = e >= 0 ? mpq_class(num, den) : mpq_class(den, num);
            term.canonicalize();
            prod *= term;
        }
        if (prod == 1) throw DomainError("linear form vanishes: product of powers equals 1");
        in.product_checked_ = true;
    }
    in.rationals_ = std::move(rationals);
    return in;
}

BoundInput BoundInput::minimal(std::vector<mpq_class> rationals, std::vector<std::int64_t> exponents) {
    std::vector<mpq_class> heights;
    double b = 3.0;
    for (std::size_t i = 0; i < rationals.size(); ++i) {
        rationals[i].canonicalize();
        heights.push_back(natural_height(rationals[i]));
        if (i < exponents.size()) b = std::max(b, std::abs(static_cast<double>(exponents[i])));
    }
    return make(std::move(rationals), std::move(exponents), std::move(heights), b);
}

// ---------------------------------------------------------------------------
// Evaluators

double matveev_lower_bound(const BoundInput& in) {
    const auto n = static_cast<unsigned long>(in.size());
    if (n < 2) throw DomainError("Matveev bound needs n >= 2");
    constexpr auto up = MPFR_RNDU;

    Real m = detail::pow_ui(Real::from_ui(30, up), n + 3, up);
    m = detail::mul(m, Real::from_ui(8, up), up);
    m = detail::mul(m, detail::pow_d(Real::from_ui(n, up), 4.5, up), up);
    const Real log_eb = detail::add(detail::log(Real::from_d(in.exponent_bound(), up), up), Real::from_ui(1, up), up);
    m = detail::mul(m, log_eb, up);
    for (const auto& a : in.heights()) m = detail::mul(m, detail::log(lifted_height(a), up), up);
    return -m.to_d(up);
}

double yu_valuation_bound(const BoundInput& in, const mpz_class& p) {
    const auto n = static_cast<unsigned long>(in.size());
    if (n < 2) throw DomainError("Yu bound needs n >= 2");
    if (!certify_prime(p)) throw DomainError("Yu bound needs a prime p");
    constexpr auto up = MPFR_RNDU;
    constexpr auto down = MPFR_RNDD;

    Real m = detail::mul(Real::euler(up), Real::from_ui(16, up), up);
    m = detail::pow_ui(m, 2 * (n + 1), up);
    m = detail::mul(m, detail::pow_d(Real::from_ui(n, up), 2.5, up), up);
    const Real log2n = detail::log(Real::from_ui(2 * n, up), up);
    m = detail::mul(m, detail::mul(log2n, log2n, up), up);

    const Real log_p = detail::log(Real::from_z(p, down), down);
    const Real ratio = detail::div(Real::from_z(p, up), detail::mul(log_p, log_p, down), up);
    m = detail::mul(m, ratio, up);
    for (const auto& a : in.heights()) m = detail::mul(m, detail::log(lifted_height(a), up), up);
    m = detail::mul(m, detail::log(Real::from_d(in.exponent_bound(), up), up), up);
    return m.to_d(up);
}

// ---------------------------------------------------------------------------
// Trace

std::string_view to_string(Branch b) { return b == Branch::archimedean ? "archimedean" : "p_adic"; }

std::string_view to_string(Check c) {
    switch (c) {
        case Check::archimedean_upper: return "archimedean_upper";
        case Check::archimedean_lower: return "archimedean_lower";
        case Check::valuation_lower: return "valuation_lower";
        case Check::valuation_upper: return "valuation_upper";
    }
    return "?";
}

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::le: return "<=";
        case Relation::ge: return ">=";
        case Relation::lt: return "<";
        case Relation::gt: return ">";
    }
    return "?";
}

bool TraceReport::all_asserted_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](const InequalityRow& r) { return !r.asserted || r.holds; });
}

unsigned split_index(const DigitExpansion& e) {
    const auto k = static_cast<unsigned>(e.size());
    if (k < 3) throw DomainError("split index needs at least three nonzero digits");
    const auto& t = e.terms();
    const mpz_class nk(static_cast<unsigned long>(t[k - 1].exponent));
    mpz_class lhs, rhs;
    for (unsigned j = 1; j + 3 <= k; ++j) {
        mpz_pow_ui(lhs.get_mpz_t(), mpz_class(static_cast<unsigned long>(t[j].exponent)).get_mpz_t(), k - 2);
        mpz_pow_ui(rhs.get_mpz_t(), nk.get_mpz_t(), j);
        if (lhs >= rhs) return j;
    }
    return k - 2;
}

namespace {

bool compare(const Real& lhs, const Real& rhs, Relation rel) {
    const int c = detail::cmp(lhs, rhs);
    switch (rel) {
        case Relation::le: return c <= 0;
        case Relation::ge: return c >= 0;
        case Relation::lt: return c < 0;
        case Relation::gt: return c > 0;
    }
    return false;
}

InequalityRow make_row(Check check, int link, const Real& lhs, const Real& rhs, Relation rel, bool asserted = true) {
    return InequalityRow{check, link, lhs.to_d(MPFR_RNDN), rhs.to_d(MPFR_RNDN), rel, compare(lhs, rhs, rel), asserted};
}

// Rationals, exponents and B for prod q_i^r_i * extra^extra_exp [* b^b_exp].
struct FormData {
    std::vector<mpq_class> rationals;
    std::vector<std::int64_t> exponents;
};

FormData support_form(const Factorization& f) {
    FormData d;
    for (const auto& pp : f.pairs()) {
        d.rationals.emplace_back(pp.prime);
        d.exponents.push_back(static_cast<std::int64_t>(pp.exponent));
    }
    return d;
}

}  // namespace

TraceReport trace_linear_forms(const mpz_class& n, Base b, const Factorization& f) {
    f.require_complete();
    if (reconstruct(f) != n) throw DomainError("factorization does not match N");
    const DigitExpansion e = decompose(n, b);
    if (!e.not_multiple_of_base()) throw DomainError("N must not be divisible by the base");
    const auto k = static_cast<unsigned>(e.size());
    if (k < 2) throw DomainError("N needs at least two nonzero digits");

    const auto& t = e.terms();
    TraceReport rep;
    rep.k = k;
    rep.k_star = std::max(k, 3u) - 2;
    rep.size_hypothesis = satisfies_size_hypothesis(n, b, k);

    constexpr auto near = MPFR_RNDN;
    const Real log_b = detail::log(Real::from_ui(static_cast<unsigned long>(b), near), near);
    const std::uint64_t nk = t[k - 1].exponent;
    const std::uint64_t nk1 = t[k - 2].exponent;

    if (nk >= 2 * nk1) {
        rep.branch = Branch::archimedean;
        const mpz_class top = ipow(b, nk) * static_cast<unsigned long>(t[k - 1].digit);
        rep.lambda = mpq_class(n - top, top);
        rep.lambda.canonicalize();

        // Same quantity from the factorization: prod q^r / (d_k b^n_k) - 1.
        mpq_class from_factors(reconstruct(f), top);
        from_factors.canonicalize();
        if (from_factors - 1 != rep.lambda) throw std::logic_error("archimedean form mismatch");

        const Real log_lambda = detail::log_abs(rep.lambda, near);
        const Real upper = detail::mul(
            Real::from_d(-(static_cast<double>(nk) / 2.0 - 1.0), near), log_b, near);
        rep.rows.push_back(make_row(Check::archimedean_upper, 0, log_lambda, upper, Relation::le));

        FormData form = support_form(f);
        form.rationals.emplace_back(static_cast<unsigned long>(t[k - 1].digit));
        form.exponents.push_back(-1);
        form.rationals.emplace_back(static_cast<unsigned long>(b));
        form.exponents.push_back(-static_cast<std::int64_t>(nk));
        const BoundInput in = BoundInput::minimal(std::move(form.rationals), std::move(form.exponents));
        const Real lower = Real::from_d(matveev_lower_bound(in), near);
        rep.rows.push_back(make_row(Check::archimedean_lower, 0, log_lambda, lower, Relation::gt));
        return rep;
    }

    rep.branch = Branch::p_adic;
    const unsigned ell = split_index(e);
    rep.ell = ell;
    mpz_class low = 0;
    for (unsigned h = 0; h < ell; ++h) low += ipow(b, t[h].exponent) * static_cast<unsigned long>(t[h].digit);
    rep.lambda = mpq_class(n - low, low);
    rep.lambda.canonicalize();

    const std::uint64_t p = smallest_prime_factor(b);
    rep.p = p;
    const long v = p_adic_valuation(rep.lambda, mpz_class(static_cast<unsigned long>(p)));
    rep.valuation = v;

    const Real log_p = detail::log(Real::from_ui(static_cast<unsigned long>(p), near), near);
    const Real log_2 = detail::log(Real::from_ui(2, near), near);
    const double kk = static_cast<double>(k) - 2.0;
    const Real nk_r = Real::from_ui(static_cast<unsigned long>(nk), near);
    const Real pow_l = detail::pow_d(nk_r, static_cast<double>(ell) / kk, near);
    const Real pow_lm1 = detail::pow_d(nk_r, static_cast<double>(ell - 1) / kk, near);
    const Real half = Real::from_d(0.5, near);
    const Real b_over_2 = detail::div(log_b, log_2, near);

    const Real v_r = Real::from_d(static_cast<double>(v), near);
    // Link 1: v_p >= n_{l+1} - log(b^(1+n_l)) / log p.
    const Real link1 = detail::sub(
        Real::from_ui(static_cast<unsigned long>(t[ell].exponent), near),
        detail::div(detail::mul(Real::from_ui(static_cast<unsigned long>(1 + t[ell - 1].exponent), near), log_b, near),
                    log_p, near),
        near);
    // Link 2: >= n_k^(l/(k-2)) / 2 - (1 + n_k^((l-1)/(k-2))) log b / log 2.
    const Real link2 = detail::sub(
        detail::mul(half, pow_l, near),
        detail::mul(detail::add(Real::from_ui(1, near), pow_lm1, near), b_over_2, near), near);
    // Link 3: >= n_k^(l/(k-2)) / 2 - 2 n_k^((l-1)/(k-2)) log b / log 2.
    const Real link3 = detail::sub(
        detail::mul(half, pow_l, near),
        detail::mul(detail::mul(Real::from_ui(2, near), pow_lm1, near), b_over_2, near), near);
    // Link 4: >= n_k^(l/(k-2)) / 4, which needs the size hypothesis.
    const Real link4 = detail::mul(Real::from_d(0.25, near), pow_l, near);

    rep.rows.push_back(make_row(Check::valuation_lower, 1, v_r, link1, Relation::ge));
    rep.rows.push_back(make_row(Check::valuation_lower, 2, link1, link2, Relation::ge));
    rep.rows.push_back(make_row(Check::valuation_lower, 3, link2, link3, Relation::ge));
    rep.rows.push_back(make_row(Check::valuation_lower, 4, link3, link4, Relation::ge, rep.size_hypothesis));

    FormData form = support_form(f);
    form.rationals.emplace_back(low);
    form.exponents.push_back(-1);
    const BoundInput in = BoundInput::minimal(std::move(form.rationals), std::move(form.exponents));
    const Real upper = Real::from_d(yu_valuation_bound(in, mpz_class(static_cast<unsigned long>(p))), near);
    rep.rows.push_back(make_row(Check::valuation_upper, 0, v_r, upper, Relation::lt));
    return rep;
}

// ---------------------------------------------------------------------------
// Top exponent bound

TopExponentBound top_exponent_bound(Base b, unsigned k, const PrimeSet& s) {
    if (b < 2) throw DomainError("base must be at least 2");
    if (k < 2) throw DomainError("top exponent bound needs k >= 2");
    constexpr auto up = MPFR_RNDU;
    const auto sz = static_cast<unsigned long>(s.size());

    Real prod_log_q = Real::from_ui(1, up);
    for (const auto& q : s.primes()) prod_log_q = detail::mul(prod_log_q, detail::log(lifted_height(mpq_class(q)), up), up);

    const double lambda = std::log(static_cast<double>(b));
    const double rho = lambda / std::numbers::ln2;
    const double log_rho = std::log(rho);
    const double big_lambda = std::max(lambda, 1.0);

    // Archimedean branch: (n/2 - 1) log b < K_a (1 + log B), with
    // K_a = 8 30^(s+5) (s+2)^(9/2) prod log max(q_i, e) log max(b-1, e) log max(b, e)
    // and B <= max(3, (n+1) log b / log 2).
    Real ka = detail::pow_ui(Real::from_ui(30, up), sz + 5, up);
    ka = detail::mul(ka, Real::from_ui(8, up), up);
    ka = detail::mul(ka, detail::pow_d(Real::from_ui(sz + 2, up), 4.5, up), up);
    ka = detail::mul(ka, prod_log_q, up);
    ka = detail::mul(ka, detail::log(lifted_height(mpq_class(static_cast<unsigned long>(b - 1))), up), up);
    ka = detail::mul(ka, detail::log(lifted_height(mpq_class(static_cast<unsigned long>(b))), up), up);
    const double log_ka = detail::log(ka, up).to_d(up);

    auto log_big_b = [&](double log_n) {
        // log max(3, (n+1) rho) with n = e^log_n
        const double log_n1 = log_n + std::log1p(std::exp(-log_n));
        return std::max(std::log(3.0), log_n1 + log_rho);
    };

    const double log_lambda = std::log(lambda);
    auto archimedean_holds = [&](double t) {
        if (t <= std::numbers::ln2) return true;
        const double lhs = t - std::numbers::ln2 + std::log1p(-2.0 * std::exp(-t)) + log_lambda;
        const double rhs = log_ka + std::log(1.0 + log_big_b(t));
        return lhs <= rhs;
    };

    TopExponentBound out;
    out.k_star = std::max(k, 3u) - 2;
    out.log_archimedean = largest_true(archimedean_holds);
    if (k == 2) {
        out.log_value = out.log_archimedean;
        out.value = std::exp(out.log_value);
        return out;
    }

    // p-adic branch: y = n_k^(1/(k-2)) satisfies y < 8 K_u max(log b, 1) log B with
    // K_u = (16e)^(2(s+2)) (s+1)^(5/2) (log 2(s+1))^2 p/(log p)^2 prod log max(q_i, e).
    const auto p = smallest_prime_factor(b);
    Real ku = detail::pow_ui(detail::mul(Real::euler(up), Real::from_ui(16, up), up), 2 * (sz + 2), up);
    ku = detail::mul(ku, detail::pow_d(Real::from_ui(sz + 1, up), 2.5, up), up);
    const Real l2n = detail::log(Real::from_ui(2 * (sz + 1), up), up);
    ku = detail::mul(ku, detail::mul(l2n, l2n, up), up);
    const Real log_p = detail::log(Real::from_ui(static_cast<unsigned long>(p), MPFR_RNDD), MPFR_RNDD);
    ku = detail::mul(ku, detail::div(Real::from_ui(static_cast<unsigned long>(p), up),
                                     detail::mul(log_p, log_p, MPFR_RNDD), up), up);
    ku = detail::mul(ku, prod_log_q, up);
    ku = detail::mul(ku, Real::from_d(8.0 * big_lambda, up), up);
    const double log_a = detail::log(ku, up).to_d(up);

    const double kk = static_cast<double>(k - 2);
    auto p_adic_holds = [&](double t) { return t <= log_a + std::log(log_big_b(kk * t)); };
    out.log_p_adic = largest_true(p_adic_holds);

    // Below n_k = (8 log b / log 2)^(k-2) the last valuation link is not
    // available; such n_k are covered by that floor itself.
    const double log_floor = std::log(8.0 * rho);
    const double root = std::max({out.log_archimedean / kk, *out.log_p_adic, log_floor});
    out.log_value = kk * root;
    out.value = std::exp(out.log_value);
    return out;
}

// ---------------------------------------------------------------------------
// Thresholds

Magnitude Magnitude::of(const mpz_class& n) { return Magnitude(log_of(n)); }

Magnitude Magnitude::of(double x) {
    if (!(x > 0) || !std::isfinite(x)) throw DomainError("magnitude needs a positive finite value");
    return Magnitude(std::log(x));
}

std::optional<std::vector<double>> Magnitude::iterated_logs(int depth) const {
    std::vector<double> out;
    double cur = log_;
    for (int i = 0; i < depth; ++i) {
        if (!(cur > 0) || !std::isfinite(cur)) return std::nullopt;
        out.push_back(cur);
        if (i + 1 < depth) cur = std::log(cur);
    }
    return out;
}

std::string_view to_string(Threshold::Status s) {
    switch (s) {
        case Threshold::Status::value: return "value";
        case Threshold::Status::degenerate: return "degenerate";
        case Threshold::Status::not_applicable: return "not_applicable";
    }
    return "?";
}

namespace {

Threshold loglog_shape(Magnitude u, double coefficient) {
    const auto l = u.iterated_logs(4);
    if (!l) return Threshold::not_applicable();
    return Threshold::of(coefficient * (*l)[1] * (*l)[2] / (*l)[3]);
}

}  // namespace

Threshold fixed_digit_gpf_threshold(Magnitude u, unsigned k, double eps) {
    if (k < 3) throw DomainError("fixed-digit threshold needs k >= 3");
    return loglog_shape(u, 1.0 / static_cast<double>(k - 2) - eps);
}

Threshold power_sum_gpf_threshold(Magnitude v, unsigned k, double eps) {
    if (k < 2) throw DomainError("power-sum threshold needs k >= 2");
    return loglog_shape(v, 1.0 / static_cast<double>(k - 1) - eps);
}

double psi(Magnitude u, double f_value) {
    if (u.log() < std::log(3.0)) throw DomainError("psi needs u >= 3");
    if (!(f_value > 0)) throw DomainError("psi needs a positive digit budget");
    return std::log(u.log()) / f_value;
}

Threshold digit_budget_gpf_threshold(Magnitude u, double f_value, double delta0, double eps) {
    if (!(delta0 > 0 && delta0 <= 1)) throw DomainError("delta0 must lie in (0, 1]");
    if (u.log() < std::log(3.0)) return Threshold::not_applicable();
    const double ps = psi(u, f_value);
    if (!(ps > std::numbers::e)) return Threshold::not_applicable();
    const double lp = std::log(ps);
    return Threshold::of((delta0 - eps) * ps * lp / std::log(lp));
}

Threshold s_unit_digit_threshold(Magnitude n, double eps) {
    const auto l = n.iterated_logs(3);
    if (!l) return Threshold::not_applicable();
    return Threshold::of((1.0 - eps) * (*l)[1] / (*l)[2]);
}

GapConstants default_gap_constants(Base b) {
    if (b < 2) throw DomainError("base must be at least 2");
    const double lambda = std::log(static_cast<double>(b));
    const double rho = lambda / std::numbers::ln2;
    const double big_lambda = std::max(lambda, 1.0);
    const double log_big_lambda = std::log(big_lambda);
    const auto p = static_cast<double>(smallest_prime_factor(b));
    const double log_pi_b = std::log(p / (std::log(p) * std::log(p)));
    const double log_16e = std::log(16.0) + 1.0;
    const double tail = std::max(0.0, std::numbers::ln2 + std::log(lambda));
    // log(1 + X) <= log X + 0.82 for X >= log(2 log 3).
    constexpr double one_plus_x = 0.82;
    // -log log 2, bounding -log log b from above.
    constexpr double neg_loglog2 = 0.36652;
    // log log(k log P') >= log log(2 log 3) > -0.24.
    constexpr double min_kp_term = 0.24;

    // Per-prime growth of the p-adic constant: 2 log(16e) + 2.5 + 4.
    const double w_p = 2.0 * log_16e + 6.5;
    // Per-prime growth of the archimedean constant: log 30 + 1.5.
    const double w_a = std::log(30.0) + 1.5;

    // The size hypothesis fails: log log N / k < log(2 log b)/k + log(8 log b / log 2).
    const double c_small = std::max(0.0, std::log(2.0 * lambda)) / 2.0 + std::log(8.0 * rho) + min_kp_term;

    const double u_p = std::log(8.0) + log_big_lambda + 4.0 * log_16e + std::max(0.0, log_pi_b) + std::log(3.0 * rho);
    const double c_p = std::log(16.0) + log_big_lambda + 4.0 * log_16e + log_pi_b - 1.0 + std::log(u_p + w_p) +
                       one_plus_x + tail / 3.0;

    const double v_a = std::numbers::ln2 + neg_loglog2 + std::log(8.0) + 5.0 * std::log(30.0) + 4.5 * std::log(3.0) +
                       2.0 * log_big_lambda;
    const double u_a = v_a + 1.0 + std::log(3.0 * rho) + lambda / (8.0 * std::pow(30.0, 6));
    const double c_a = std::numbers::ln2 + v_a - 1.0 + std::log(u_a + w_a) + one_plus_x + tail / 2.0;

    GapConstants out;
    out.c = std::nextafter(std::max({c_small, c_p, c_a}), INFINITY);
    out.big_c = std::nextafter(std::max(w_p, w_a) + 1.0, INFINITY);
    return out;
}

GapReport digit_prime_gap(Magnitude n, unsigned k, const mpz_class& gpf, std::size_t omega, GapConstants constants) {
    if (n.log() < std::log(16.0)) throw DomainError("gap needs n >= 16");
    if (k < 2) throw DomainError("gap needs k >= 2");
    if (gpf < 2) throw DomainError("gap needs P >= 2");
    GapReport r;
    r.p_guarded = gpf < 3;
    const double log_p = r.p_guarded ? std::log(3.0) : log_of(gpf);
    const double kd = static_cast<double>(k);
    r.lhs = std::log(n.log()) / kd;
    r.rhs = constants.c + std::log(kd) + static_cast<double>(omega) * (constants.big_c + std::log(log_p)) +
            std::log(std::log(kd * log_p));
    r.gap = r.rhs - r.lhs;
    return r;
}

std::array<SmoothDigitRow, 3> smooth_digit_assertions(const mpz_class& n, std::size_t nz) {
    std::array<SmoothDigitRow, 3> rows{};
    const Magnitude m = Magnitude::of(n);
    const auto nzd = static_cast<double>(nz);
    auto finish = [&](SmoothDigitRow& row, double smooth_bound, double digit_bound) {
        row.applicable = true;
        row.smooth_bound = Threshold::of(smooth_bound);
        row.digit_bound = Threshold::of(digit_bound);
        row.smooth = is_smooth(n, smooth_bound);
        row.violated = row.smooth && nzd < digit_bound;
    };
    if (const auto l = m.iterated_logs(4)) {
        const double l2 = (*l)[1], l3 = (*l)[2], l4 = (*l)[3];
        finish(rows[0], l2 / (2.0 * l4), l3);
        const double r = std::sqrt(l2 * l3 / l4);
        finish(rows[1], r, r / 3.0);
    }
    if (const auto l = m.iterated_logs(5)) {
        const double l2 = (*l)[1], l3 = (*l)[2], l4 = (*l)[3], l5 = (*l)[4];
        finish(rows[2], 0.5 * l3 * l4 / l5, l2 / (2.0 * l3));
    }
    return rows;
}

Threshold cyclotomic_min_exponent(Magnitude n, const mpz_class& gpf) {
    const auto l = n.iterated_logs(3);
    if (!l) return Threshold::not_applicable();
    const double log_p = gpf <= 1 ? 0.0 : log_of(gpf);
    return Threshold::of(log_p * (*l)[2] / (*l)[0]);
}

std::optional<bool> cyclotomic_size_check(Magnitude n, const mpz_class& gpf, double c) {
    const auto l = n.iterated_logs(3);
    if (!l) return std::nullopt;
    const double log_p = gpf <= 1 ? 0.0 : log_of(gpf);
    return log_p <= c * (*l)[0] / (*l)[2];
}

}  // namespace smoothdigits
