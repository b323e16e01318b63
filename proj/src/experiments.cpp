#include "smoothdigits/experiments.hpp"

#include <bit>
#include <cmath>
#include <exception>
#include <map>

#include <omp.h>

namespace smoothdigits {

namespace {

ThresholdCheck compare_gpf(const Threshold& t, const std::optional<mpz_class>& gpf) {
    ThresholdCheck c{t, std::nullopt};
    if (const auto v = t.value(); v && gpf) c.holds = *v <= 0 || log_of(*gpf) > std::log(*v);
    return c;
}

ThresholdCheck compare_digits(const Threshold& t, std::size_t nz) {
    ThresholdCheck c{t, std::nullopt};
    if (const auto v = t.value()) c.holds = static_cast<double>(nz) >= *v;
    return c;
}

SparseSpec spec_of(const SurveyOptions& o) {
    return o.budget_f ? SparseSpec::variable(o.base, *o.budget_f) : SparseSpec::fixed(o.base, o.k);
}

GapConstants constants_of(const SurveyOptions& o) {
    return o.params.gap_constants ? *o.params.gap_constants : default_gap_constants(o.base);
}

SurveyRecord build_record(std::uint64_t index, const mpz_class& value, const SurveyOptions& opts,
                          const GapConstants& constants) {
    SurveyRecord r;
    r.index = index;
    r.value = value;
    r.digits = decompose(value, opts.base);
    r.factorization = factorize(value, opts.factor_budget);
    const auto& f = r.factorization;
    if (f.complete()) {
        r.gpf = greatest_prime_factor(f);
        r.omega = omega(f);
        r.radical = radical(f);
    }
    const Magnitude u = Magnitude::of(value);
    const double eps = opts.params.epsilon;
    const std::size_t nz = r.digits.size();

    if (!opts.budget_f && opts.k >= 3) r.fixed_digit = compare_gpf(fixed_digit_gpf_threshold(u, opts.k, eps), r.gpf);
    r.s_unit_digit = compare_digits(s_unit_digit_threshold(u, eps), nz);
    if (opts.budget_f) {
        r.f_value = opts.budget_f->f(value);
        if (*r.f_value > 0)
            r.digit_budget = compare_gpf(digit_budget_gpf_threshold(u, *r.f_value, opts.params.delta0, eps), r.gpf);
    }

    if (f.complete() && nz >= 2) {
        const TraceReport t = trace_linear_forms(value, opts.base, f);
        r.trace = TraceSummary{t.branch, t.ell, t.rows.size(), t.all_asserted_hold()};
        if (value >= 16) r.gap = digit_prime_gap(u, static_cast<unsigned>(nz), *r.gpf, *r.omega, constants);
    }
    return r;
}

struct WindowTracker {
    std::vector<WindowSummary> windows;

    void add(const SurveyRecord& r) {
        const auto t = static_cast<unsigned>(std::bit_width(r.index) - 1);
        if (windows.empty() || windows.back().t != t) {
            WindowSummary w;
            w.t = t;
            w.first = r.index;
            windows.push_back(w);
        }
        auto& w = windows.back();
        w.last = r.index;
        if (!r.gpf) {
            ++w.partial;
            return;
        }
        ++w.complete;
        if (!w.min_gpf || *r.gpf < *w.min_gpf) w.min_gpf = *r.gpf;
    }
};

}  // namespace

SurveyRecord survey_record(std::uint64_t index, const mpz_class& value, const SurveyOptions& opts) {
    return build_record(index, value, opts, constants_of(opts));
}

SurveySummary sparse_survey(const SurveyOptions& opts, const RecordSink& sink) {
    if (opts.terms < 1) throw DomainError("survey needs J >= 1");
    if (!(opts.params.delta0 > 0 && opts.params.delta0 <= 1)) throw DomainError("delta0 must lie in (0, 1]");
    SparseSequence seq(spec_of(opts), StreamBudget{opts.terms, std::nullopt, std::nullopt});
    const GapConstants constants = constants_of(opts);
    const std::size_t chunk = std::max<std::size_t>(opts.chunk, 1);
    const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();

    SurveySummary summary;
    WindowTracker tracker;
    std::uint64_t next_index = 1;
    while (true) {
        const auto values = take(seq, chunk);
        if (values.empty()) break;
        const auto n = static_cast<std::ptrdiff_t>(values.size());
        std::vector<std::optional<SurveyRecord>> records(values.size());

        if (opts.parallel) {
            std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
            for (std::ptrdiff_t i = 0; i < n; ++i) {
                try {
                    records[i] = build_record(next_index + i, values[i], opts, constants);
                } catch (...) {
#pragma omp critical(survey_failure)
                    if (!failure) failure = std::current_exception();
                }
            }
            if (failure) std::rethrow_exception(failure);
        } else {
            for (std::ptrdiff_t i = 0; i < n; ++i) records[i] = build_record(next_index + i, values[i], opts, constants);
        }

        for (const auto& r : records) {
            tracker.add(*r);
            ++summary.records;
            if (!r->factorization.complete()) ++summary.partial;
            if (sink) sink(*r);
        }
        next_index += values.size();
    }
    summary.windows = std::move(tracker.windows);
    return summary;
}

std::vector<SurveyRecord> sparse_survey(const SurveyOptions& opts) {
    std::vector<SurveyRecord> out;
    sparse_survey(opts, [&](const SurveyRecord& r) { out.push_back(r); });
    return out;
}

// ---------------------------------------------------------------------------

mpz_class minimal_root(const mpz_class& x) {
    if (x < 1) throw DomainError("minimal root needs x >= 1");
    if (x < 4) return x;
    mpz_class g;
    for (auto e = static_cast<unsigned long>(mpz_sizeinbase(x.get_mpz_t(), 2)); e >= 2; --e) {
        if (mpz_root(g.get_mpz_t(), x.get_mpz_t(), e) != 0) return g;
    }
    return x;
}

bool multiplicatively_independent(const mpz_class& a, const mpz_class& b) {
    if (a < 2 || b < 2) throw DomainError("independence check needs a, b >= 2");
    return minimal_root(a) != minimal_root(b);
}

void stewart_survey(const mpz_class& a, Base b, std::uint64_t n_lo, std::uint64_t n_hi,
                    const std::function<void(const StewartRow&)>& sink) {
    if (b < 2) throw DomainError("base must be at least 2");
    if (n_lo < 3) throw DomainError("n must be at least 3");
    if (n_hi < n_lo) throw DomainError("empty exponent range");
    if (!multiplicatively_independent(a, mpz_class(static_cast<unsigned long>(b))))
        throw DomainError("a and b are multiplicatively dependent");

    mpz_class power;
    mpz_pow_ui(power.get_mpz_t(), a.get_mpz_t(), n_lo);
    for (std::uint64_t n = n_lo;; ++n) {
        StewartRow row;
        row.n = n;
        row.nz = nz_count(power, b);
        const double ln = std::log(static_cast<double>(n));
        row.bound = ln / (2.0 * std::log(ln));
        row.exceeds = static_cast<double>(row.nz) > row.bound;
        sink(row);
        if (n == n_hi) break;
        power *= a;
    }
}

std::vector<StewartRow> stewart_survey(const mpz_class& a, Base b, std::uint64_t n_lo, std::uint64_t n_hi) {
    std::vector<StewartRow> out;
    stewart_survey(a, b, n_lo, n_hi, [&](const StewartRow& r) { out.push_back(r); });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> low, high;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        low.push_back(d);
        if (d * d != n) high.push_back(n / d);
    }
    low.insert(low.end(), high.rbegin(), high.rend());
    return low;
}

}  // namespace

int mobius(std::uint64_t n) {
    if (n == 0) throw DomainError("mobius needs n >= 1");
    int sign = 1;
    while (n > 1) {
        const auto p = smallest_prime_factor(n);
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

mpz_class cyclotomic_value(std::uint64_t d, unsigned long x) {
    if (d == 0) throw DomainError("cyclotomic index must be positive");
    if (x < 2) throw DomainError("cyclotomic evaluation point must be at least 2");
    mpz_class num = 1, den = 1, term;
    for (auto e : divisors(d)) {
        const int mu = mobius(e);
        if (mu == 0) continue;
        mpz_ui_pow_ui(term.get_mpz_t(), x, d / e);
        term -= 1;
        (mu > 0 ? num : den) *= term;
    }
    mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return num;
}

CyclotomicReport cyclotomic_smooth(std::uint64_t n, FactorBudget budget, double c) {
    if (n < 1) throw DomainError("cyclotomic construction needs n >= 1");
    CyclotomicReport rep;
    rep.n = n;
    mpz_ui_pow_ui(rep.value.get_mpz_t(), 2, n);
    rep.value += 1;

    mpz_class product = 1, cofactor = 1;
    std::map<mpz_class, unsigned long> merged;
    for (auto d : divisors(2 * n)) {
        if (n % d == 0) continue;
        CyclotomicPiece piece{d, cyclotomic_value(d, 2), {}};
        piece.factorization = factorize(piece.value, budget);
        product *= piece.value;
        for (const auto& pp : piece.factorization.pairs()) merged[pp.prime] += pp.exponent;
        cofactor *= piece.factorization.cofactor();
        rep.pieces.push_back(std::move(piece));
    }
    rep.identity_holds = product == rep.value;

    std::vector<PrimePower> pairs;
    for (auto& [p, e] : merged) pairs.push_back(PrimePower{p, e});
    rep.factorization = Factorization(rep.value, std::move(pairs), cofactor);
    if (rep.factorization.complete()) {
        rep.gpf = greatest_prime_factor(rep.factorization);
        const Magnitude m = Magnitude::of(rep.value);
        rep.min_exponent = cyclotomic_min_exponent(m, *rep.gpf);
        rep.size_check = cyclotomic_size_check(m, *rep.gpf, c);
    }
    return rep;
}

// ---------------------------------------------------------------------------

std::vector<SearchHit> smooth_sparse_search(Base b, unsigned k, const PrimeSet& s, const mpz_class& limit,
                                            double eps) {
    if (b < 2) throw DomainError("base must be at least 2");
    if (k < 1) throw DomainError("digit bound must be at least 1");
    std::vector<SearchHit> hits;
    SmoothSequence seq(s, limit);
    while (auto v = seq.next()) {
        if (mpz_divisible_ui_p(v->get_mpz_t(), static_cast<unsigned long>(b))) continue;
        const std::size_t nz = nz_count(*v, b);
        if (nz > k) continue;
        hits.push_back(SearchHit{*v, nz, compare_digits(s_unit_digit_threshold(Magnitude::of(*v), eps), nz)});
    }
    return hits;
}

}  // namespace smoothdigits
