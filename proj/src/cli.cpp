#include "smoothdigits/cli.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "smoothdigits/bounds.hpp"
#include "smoothdigits/experiments.hpp"
#include "smoothdigits/factor.hpp"
#include "smoothdigits/io.hpp"

namespace smoothdigits::cli {

namespace {

using io::Json;

// ---------------------------------------------------------------------------
// Integer expressions

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    mpz_class parse() {
        mpz_class v = expr();
        skip();
        if (pos_ != s_.size()) fail();
        return v;
    }

private:
    [[noreturn]] void fail() const { throw DomainError("cannot parse integer '" + s_ + "'"); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    mpz_class expr() {
        mpz_class v = term();
        while (true) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    mpz_class term() {
        mpz_class v = power();
        while (eat('*')) v *= power();
        return v;
    }

    mpz_class power() {
        mpz_class base = atom();
        if (!eat('^')) return base;
        const mpz_class e = power();
        if (e < 0 || !e.fits_ulong_p() || e > 100'000'000) fail();
        mpz_class r;
        mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e.get_ui());
        return r;
    }

    mpz_class atom() {
        skip();
        if (eat('(')) {
            mpz_class v = expr();
            if (!eat(')')) fail();
            return v;
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail();
        return mpz_class(s_.substr(start, pos_ - start));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

PrimeSet parse_primes(const std::string& s) {
    std::vector<mpz_class> primes;
    for (const auto& tok : split(s, ',')) primes.push_back(parse_integer(tok));
    return PrimeSet(std::move(primes));
}

mpz_class parse_positive(const std::string& s, const char* what) {
    const mpz_class v = parse_integer(s);
    if (v < 1) throw DomainError(std::string(what) + " must be a positive integer");
    return v;
}

// A size argument: an integer expression, or a positive real like 1e9.
Magnitude parse_magnitude(const std::string& s) {
    try {
        return Magnitude::of(parse_positive(s, "size"));
    } catch (const DomainError&) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw DomainError("cannot parse size '" + s + "'");
        }
        if (used != s.size()) throw DomainError("cannot parse size '" + s + "'");
        return Magnitude::of(v);
    }
}

// ---------------------------------------------------------------------------
// Output

enum class Format { jsonl, csv, plain };

struct Emitter {
    Format format;
    std::ostringstream data;

    void header() {
        if (format == Format::jsonl) line(io::header());
    }
    void line(const Json& j) { data << j.dump() << '\n'; }
    void csv(const std::vector<std::string>& fields) { data << io::csv_row(fields) << '\n'; }
    void text(const std::string& s) { data << s << '\n'; }
};

Json threshold_json(std::string_view kind, const Threshold& t) {
    Json j{{"kind", kind}};
    j.update(io::to_json(t));
    return j;
}

// ---------------------------------------------------------------------------
// Subcommand option blocks

struct EnumArgs {
    std::string stream = "sparse";
    Base base = 2;
    unsigned k = 2;
    std::string f_family;
    double f_param = 1.0;
    unsigned f_cap = 8;
    std::uint64_t take = 20;
    std::string max_value;
    std::uint64_t max_top_exponent = 0;
    std::string bases;
    bool no_divisor_check = false;
    std::string primes;
};

struct FactorArgs {
    std::vector<std::string> numbers;
    std::uint64_t budget = FactorBudget{}.effort;
    std::string primes;
};

struct TraceArgs {
    std::string n;
    Base base = 2;
    std::uint64_t budget = FactorBudget{}.effort;
    bool pretty = false;
};

struct BoundsArgs {
    std::string rationals;
    std::string exponents;
    std::string heights;
    double big_b = 0;
    std::string p = "2";
    std::string kind;
    std::string u;
    unsigned k = 3;
    double eps = 0;
    double f = 1;
    double delta0 = 1;
    Base base = 2;
    std::string primes;
    std::string n;
    std::optional<double> c;
    std::optional<double> big_c;
    std::uint64_t budget = FactorBudget{}.effort;
};

struct SurveyArgs {
    Base base = 2;
    unsigned k = 2;
    std::string f_family;
    double f_param = 1.0;
    unsigned f_cap = 8;
    std::uint64_t take = 100;
    std::uint64_t budget = 200'000;
    double eps = 0;
    double delta0 = 1;
    std::optional<double> c;
    std::optional<double> big_c;
    std::size_t chunk = 64;
    bool serial = false;
    std::string a = "2";
    std::uint64_t from = 3;
    std::uint64_t to = 100;
};

struct CycloArgs {
    std::uint64_t n = 0;
    std::uint64_t from = 0;
    std::uint64_t to = 0;
    std::uint64_t budget = FactorBudget{}.effort;
    double c = 1.0;
};

struct SearchArgs {
    Base base = 10;
    unsigned k = 2;
    std::string primes;
    std::string limit;
    double eps = 0;
};

void require_structured(Format f) {
    if (f == Format::plain) throw DomainError("--format plain is only available for enum");
}

// ---------------------------------------------------------------------------
// Handlers

int do_enum(const EnumArgs& a, Emitter& out, const CLI::App& sub) {
    std::vector<mpz_class> values;
    StreamBudget budget;
    budget.max_emissions = a.take;
    if (!a.max_value.empty()) budget.max_value = parse_integer(a.max_value);
    if (a.max_top_exponent) budget.max_top_exponent = a.max_top_exponent;

    if (a.stream == "sparse") {
        const bool has_f = !a.f_family.empty();
        if (has_f && sub.count("--k")) throw DomainError("give either --k or --f, not both");
        SparseSequence seq(has_f ? SparseSpec::variable(a.base, digit_budget_family(a.f_family, a.f_param, a.f_cap))
                                 : SparseSpec::fixed(a.base, a.k),
                           budget);
        values = take(seq, a.take);
    } else if (a.stream == "powersum") {
        PowerSumSpec spec;
        for (const auto& t : split(a.bases, ',')) {
            const mpz_class v = parse_positive(t, "power-sum base");
            if (!v.fits_ulong_p()) throw DomainError("power-sum base too large");
            spec.bases.push_back(v.get_ui());
        }
        spec.shared_divisor_check = !a.no_divisor_check;
        PowerSumSequence seq(spec, budget);
        values = take(seq, a.take);
    } else {
        if (a.primes.empty()) throw DomainError("smooth stream needs --primes");
        mpz_class limit;
        if (budget.max_value) limit = *budget.max_value;
        else mpz_ui_pow_ui(limit.get_mpz_t(), 10, 1000);
        SmoothSequence seq(parse_primes(a.primes), limit);
        values = take(seq, a.take);
    }

    if (out.format == Format::csv) out.csv({"j", "value"});
    out.header();
    std::uint64_t j = 1;
    for (const auto& v : values) {
        switch (out.format) {
            case Format::jsonl: out.line(Json{{"j", j}, {"value", v.get_str()}}); break;
            case Format::csv: out.csv({std::to_string(j), v.get_str()}); break;
            case Format::plain: out.text(v.get_str()); break;
        }
        ++j;
    }
    return kOk;
}

int do_factor(const FactorArgs& a, Emitter& out) {
    require_structured(out.format);
    std::vector<mpz_class> ns;
    for (const auto& s : a.numbers) ns.push_back(parse_positive(s, "n"));
    std::optional<PrimeSet> s;
    if (!a.primes.empty()) s = parse_primes(a.primes);
    const auto fs = factorize_batch(ns, FactorBudget{a.budget});

    out.header();
    if (out.format == Format::csv) out.csv(io::factor_csv_header());
    bool partial = false;
    for (const auto& f : fs) {
        partial |= !f.complete();
        if (out.format == Format::jsonl) out.line(io::factor_summary(f, s ? &*s : nullptr));
        else out.csv(io::factor_csv_row(f, s ? &*s : nullptr));
    }
    return partial ? kPartial : kOk;
}

std::string pretty_trace(const mpz_class& n, Base b, const TraceReport& t) {
    std::ostringstream o;
    o << "N = " << n.get_str() << " (base " << b << ", k = " << t.k << ", k* = " << t.k_star << ")\n";
    o << "branch " << to_string(t.branch);
    if (t.ell) o << ", ell = " << *t.ell << ", p = " << *t.p << ", v_p = " << *t.valuation;
    o << "\nLambda = " << t.lambda.get_str() << "\n";
    o << "size hypothesis " << (t.size_hypothesis ? "holds" : "fails") << "\n";
    for (const auto& r : t.rows) {
        o << "  " << to_string(r.check);
        if (r.link) o << " link " << r.link;
        o << ": " << io::number(r.lhs) << ' ' << to_string(r.relation) << ' ' << io::number(r.rhs) << "  "
          << (r.holds ? "holds" : "FAILS") << (r.asserted ? "" : " (not asserted)") << "\n";
    }
    o << (t.all_asserted_hold() ? "all asserted rows hold" : "an asserted row fails");
    return o.str();
}

int do_trace(const TraceArgs& a, Emitter& out) {
    require_structured(out.format);
    const mpz_class n = parse_positive(a.n, "N");
    const Factorization f = factorize(n, FactorBudget{a.budget});
    if (!f.complete()) {
        out.header();
        if (out.format == Format::jsonl) out.line(io::factor_summary(f, nullptr));
        else {
            out.csv(io::factor_csv_header());
            out.csv(io::factor_csv_row(f, nullptr));
        }
        return kPartial;
    }
    const TraceReport t = trace_linear_forms(n, a.base, f);
    if (a.pretty) {
        out.text(pretty_trace(n, a.base, t));
        return kOk;
    }
    out.header();
    if (out.format == Format::jsonl) {
        Json j{{"n", n.get_str()}, {"base", a.base}};
        j.update(io::to_json(t));
        out.line(j);
    } else {
        out.csv(io::trace_csv_header());
        for (const auto& row : t.rows) out.csv(io::trace_csv_row(n, t, row));
    }
    return kOk;
}

BoundInput bound_input(const BoundsArgs& a) {
    std::vector<mpq_class> rationals;
    for (const auto& t : split(a.rationals, ',')) rationals.push_back(parse_rational(t));
    std::vector<std::int64_t> exponents;
    for (const auto& t : split(a.exponents, ',')) {
        const mpz_class v = parse_integer(t.front() == '-' ? "0" + t : t);
        if (!v.fits_slong_p()) throw DomainError("exponent out of range");
        exponents.push_back(v.get_si());
    }
    if (a.heights.empty() && a.big_b == 0) return BoundInput::minimal(std::move(rationals), std::move(exponents));

    std::vector<mpq_class> heights;
    if (a.heights.empty()) {
        for (const auto& r : rationals) heights.push_back(BoundInput::natural_height(r));
    } else {
        for (const auto& t : split(a.heights, ',')) heights.push_back(parse_rational(t));
    }
    double big_b = a.big_b;
    if (big_b == 0) {
        big_b = 3;
        for (auto e : exponents) big_b = std::max(big_b, std::abs(static_cast<double>(e)));
    }
    return BoundInput::make(std::move(rationals), std::move(exponents), std::move(heights), big_b);
}

int do_bounds(const std::string& which, const BoundsArgs& a, Emitter& out) {
    require_structured(out.format);
    Json j;
    if (which == "matveev" || which == "yu") {
        const BoundInput in = bound_input(a);
        const double v = which == "matveev" ? matveev_lower_bound(in) : yu_valuation_bound(in, parse_integer(a.p));
        j = Json{{"kind", which}, {"n", in.size()}, {"B", in.exponent_bound()}, {"value", v},
                 {"product_checked", in.product_checked()}};
    } else if (which == "threshold") {
        const Magnitude u = parse_magnitude(a.u);
        if (a.kind == "fixed") j = threshold_json(a.kind, fixed_digit_gpf_threshold(u, a.k, a.eps));
        else if (a.kind == "power") j = threshold_json(a.kind, power_sum_gpf_threshold(u, a.k, a.eps));
        else if (a.kind == "budget") j = threshold_json(a.kind, digit_budget_gpf_threshold(u, a.f, a.delta0, a.eps));
        else if (a.kind == "s-unit") j = threshold_json(a.kind, s_unit_digit_threshold(u, a.eps));
        else j = Json{{"kind", "psi"}, {"value", psi(u, a.f)}};
    } else if (which == "top-exponent") {
        if (a.primes.empty()) throw DomainError("top-exponent needs --primes");
        const auto t = top_exponent_bound(a.base, a.k, parse_primes(a.primes));
        j = Json{{"kind", which},
                 {"base", a.base},
                 {"k", a.k},
                 {"k_star", t.k_star},
                 {"log_archimedean", t.log_archimedean},
                 {"log_p_adic", t.log_p_adic ? Json(*t.log_p_adic) : Json(nullptr)},
                 {"log_value", t.log_value},
                 {"value", std::isfinite(t.value) ? Json(t.value) : Json(nullptr)}};
    } else if (which == "constants") {
        const auto g = default_gap_constants(a.base);
        j = Json{{"kind", which}, {"base", a.base}, {"c", g.c}, {"C", g.big_c}};
    } else if (which == "gap" || which == "smooth-digits") {
        const mpz_class n = parse_positive(a.n, "n");
        const std::size_t nz = nz_count(n, a.base);
        if (which == "smooth-digits") {
            Json rows = Json::array();
            for (const auto& r : smooth_digit_assertions(n, nz)) {
                rows.push_back(Json{{"applicable", r.applicable},
                                    {"smooth_bound", io::to_json(r.smooth_bound)},
                                    {"digit_bound", io::to_json(r.digit_bound)},
                                    {"smooth", r.smooth},
                                    {"violated", r.violated}});
            }
            j = Json{{"kind", which}, {"n", n.get_str()}, {"nz", nz}, {"rows", rows}};
        } else {
            const Factorization f = factorize(n, FactorBudget{a.budget});
            if (!f.complete()) {
                out.header();
                out.line(io::factor_summary(f, nullptr));
                return kPartial;
            }
            GapConstants g = default_gap_constants(a.base);
            if (a.c) g.c = *a.c;
            if (a.big_c) g.big_c = *a.big_c;
            const auto r = digit_prime_gap(Magnitude::of(n), static_cast<unsigned>(nz), greatest_prime_factor(f),
                                           omega(f), g);
            j = Json{{"kind", which},  {"n", n.get_str()}, {"k", nz},    {"P", greatest_prime_factor(f).get_str()},
                     {"omega", omega(f)}, {"c", g.c},         {"C", g.big_c}};
            j.update(io::to_json(r));
        }
    }
    out.header();
    if (out.format == Format::jsonl) {
        out.line(j);
    } else {
        std::vector<std::string> keys, vals;
        for (const auto& [k, v] : j.items()) {
            keys.push_back(k);
            vals.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        out.csv(keys);
        out.csv(vals);
    }
    return kOk;
}

int do_survey_sparse(const SurveyArgs& a, Emitter& out, const CLI::App& sub, int threads) {
    require_structured(out.format);
    SurveyOptions o;
    o.base = a.base;
    o.k = a.k;
    if (!a.f_family.empty()) {
        if (sub.count("--k")) throw DomainError("give either --k or --f, not both");
        o.budget_f = digit_budget_family(a.f_family, a.f_param, a.f_cap);
    }
    o.terms = a.take;
    o.factor_budget = FactorBudget{a.budget};
    o.params.epsilon = a.eps;
    o.params.delta0 = a.delta0;
    if (a.c || a.big_c) {
        GapConstants g = default_gap_constants(a.base);
        if (a.c) g.c = *a.c;
        if (a.big_c) g.big_c = *a.big_c;
        o.params.gap_constants = g;
    }
    o.threads = threads;
    o.parallel = !a.serial;
    o.chunk = a.chunk;

    out.header();
    if (out.format == Format::csv) out.csv(io::survey_csv_header());
    const SurveySummary s = sparse_survey(o, [&](const SurveyRecord& r) {
        if (out.format == Format::jsonl) out.line(io::to_json(r));
        else out.csv(io::survey_csv_row(r));
    });
    if (out.format == Format::jsonl) {
        for (const auto& w : s.windows) out.line(io::to_json(w));
    }
    return s.partial ? kPartial : kOk;
}

int do_survey_stewart(const SurveyArgs& a, Emitter& out) {
    require_structured(out.format);
    const mpz_class base_a = parse_positive(a.a, "a");
    std::vector<StewartRow> rows = stewart_survey(base_a, a.base, a.from, a.to);
    out.header();
    if (out.format == Format::csv) out.csv(io::stewart_csv_header());
    for (const auto& r : rows) {
        if (out.format == Format::jsonl) out.line(io::to_json(r));
        else out.csv(io::stewart_csv_row(r));
    }
    return kOk;
}

int do_cyclo(const CycloArgs& a, Emitter& out) {
    require_structured(out.format);
    std::uint64_t lo = a.n, hi = a.n;
    if (a.n == 0) {
        lo = a.from;
        hi = a.to;
    }
    if (lo < 1 || hi < lo) throw DomainError("cyclo needs --n >= 1 or a range --from <= --to");
    out.header();
    if (out.format == Format::csv) out.csv(io::cyclo_csv_header());
    bool partial = false;
    for (std::uint64_t n = lo; n <= hi; ++n) {
        const auto r = cyclotomic_smooth(n, FactorBudget{a.budget}, a.c);
        partial |= !r.factorization.complete();
        if (out.format == Format::jsonl) out.line(io::to_json(r));
        else out.csv(io::cyclo_csv_row(r));
    }
    return partial ? kPartial : kOk;
}

int do_search(const SearchArgs& a, Emitter& out) {
    require_structured(out.format);
    if (a.primes.empty() || a.limit.empty()) throw DomainError("search needs --primes and --limit");
    const auto hits = smooth_sparse_search(a.base, a.k, parse_primes(a.primes), parse_positive(a.limit, "limit"), a.eps);
    out.header();
    if (out.format == Format::csv) out.csv(io::search_csv_header());
    for (const auto& h : hits) {
        if (out.format == Format::jsonl) out.line(io::to_json(h));
        else out.csv(io::search_csv_row(h));
    }
    return kOk;
}

}  // namespace

// ---------------------------------------------------------------------------

mpz_class parse_integer(const std::string& text) { return ExprParser(text).parse(); }

mpq_class parse_rational(const std::string& text) {
    if (text == "e") return mpq_class(2.718281828459045);
    const auto slash = text.find('/');
    const bool negative = !text.empty() && text.front() == '-';
    const std::string body = negative ? text.substr(1) : text;
    mpq_class q;
    if (slash == std::string::npos) {
        q = parse_integer(body);
    } else {
        const auto s = body.find('/');
        const mpz_class den = parse_integer(body.substr(s + 1));
        if (den == 0) throw DomainError("zero denominator in '" + text + "'");
        q = mpq_class(parse_integer(body.substr(0, s)), den);
        q.canonicalize();
    }
    return negative ? mpq_class(-q) : q;
}

DigitBudget digit_budget_family(const std::string& name, double c, unsigned cap) {
    if (!(c > 0)) throw DomainError("digit budget parameter must be positive");
    if (name == "const") return DigitBudget{[c](const mpz_class&) { return c; }, true, cap};
    if (name == "loglog") {
        return DigitBudget{[c](const mpz_class& n) {
                               const double l = std::max(log_of(n), std::log(16.0));
                               return 1.0 + c * std::log(l);
                           },
                           true, cap};
    }
    if (name == "sqrt") {
        return DigitBudget{[c](const mpz_class& n) {
                               const auto l = Magnitude::of(n).iterated_logs(4);
                               if (!l) return 1.0;
                               return std::max(1.0, c * std::sqrt((*l)[1] * (*l)[2] / (*l)[3]));
                           },
                           false, cap};
    }
    throw DomainError("unknown digit budget family '" + name + "' (const, loglog, sqrt)");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse digits, smooth numbers and linear forms in logarithms", "smoothdigits"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "jsonl";
    std::string output;
    int threads = 0;
    app.add_option("--format", format, "jsonl | csv (enum also accepts plain)")
        ->check(CLI::IsMember({"jsonl", "csv", "plain"}));
    app.add_option("--output", output, "write data here instead of stdout");
    app.add_option("--threads", threads, "worker threads (0: all available)")->check(CLI::NonNegativeNumber);

    EnumArgs ea;
    auto* en = app.add_subcommand("enum", "emit a sparse, power-sum or smooth stream");
    en->add_option("--stream", ea.stream, "sparse | powersum | smooth")
        ->check(CLI::IsMember({"sparse", "powersum", "smooth"}));
    en->add_option("--base", ea.base, "base b >= 2");
    en->add_option("--k", ea.k, "at most k nonzero digits");
    en->add_option("--f", ea.f_family, "digit budget family: const | loglog | sqrt");
    en->add_option("--f-param", ea.f_param, "parameter c of the family");
    en->add_option("--f-cap", ea.f_cap, "digit cap per round for non-monotone families");
    en->add_option("--take", ea.take, "number of terms");
    en->add_option("--max-value", ea.max_value, "stop above this value");
    en->add_option("--max-top-exponent", ea.max_top_exponent, "stop above this top exponent");
    en->add_option("--bases", ea.bases, "power-sum bases a_1,...,a_k");
    en->add_flag("--no-divisor-check", ea.no_divisor_check, "allow power-sum bases with gcd 1");
    en->add_option("--primes", ea.primes, "prime set for the smooth stream");

    FactorArgs fa;
    auto* fc = app.add_subcommand("factor", "factor integers and report P, omega, Q, S-part");
    fc->add_option("numbers", fa.numbers, "integers or expressions like 2^64+1")->required();
    fc->add_option("--budget", fa.budget, "factoring effort");
    fc->add_option("--primes", fa.primes, "prime set S for the S-part");

    TraceArgs ta;
    auto* tr = app.add_subcommand("trace", "recompute the linear-form argument for one integer");
    tr->add_option("n", ta.n, "integer N")->required();
    tr->add_option("--base", ta.base, "base b >= 2");
    tr->add_option("--budget", ta.budget, "factoring effort");
    tr->add_flag("--pretty", ta.pretty, "human-readable report");

    BoundsArgs ba;
    auto* bd = app.add_subcommand("bounds", "evaluate bounds and thresholds");
    bd->require_subcommand(1);
    std::vector<CLI::App*> bsubs;
    for (const char* name : {"matveev", "yu"}) {
        auto* s = bd->add_subcommand(name, std::string(name) + " bound for a linear form");
        s->add_option("--rationals", ba.rationals, "x_1/y_1,...,x_n/y_n")->required();
        s->add_option("--exponents", ba.exponents, "b_1,...,b_n")->required();
        s->add_option("--heights", ba.heights, "A_1,...,A_n (default max(|x|,|y|,e))");
        s->add_option("--B", ba.big_b, "exponent bound (default max(3,|b_i|))");
        if (std::string(name) == "yu") s->add_option("--p", ba.p, "prime p");
        bsubs.push_back(s);
    }
    {
        auto* s = bd->add_subcommand("threshold", "threshold functions");
        s->add_option("--kind", ba.kind, "fixed | power | budget | s-unit | psi")
            ->required()
            ->check(CLI::IsMember({"fixed", "power", "budget", "s-unit", "psi"}));
        s->add_option("--u", ba.u, "size: integer expression or real")->required();
        s->add_option("--k", ba.k, "digit or term count");
        s->add_option("--eps", ba.eps, "epsilon");
        s->add_option("--f", ba.f, "value of the digit budget f(u)");
        s->add_option("--delta0", ba.delta0, "delta0 in (0,1]");
        bsubs.push_back(s);
    }
    {
        auto* s = bd->add_subcommand("top-exponent", "explicit bound on the top exponent");
        s->add_option("--base", ba.base, "base b >= 2");
        s->add_option("--k", ba.k, "number of nonzero digits");
        s->add_option("--primes", ba.primes, "prime support S")->required();
        bsubs.push_back(s);
    }
    {
        auto* s = bd->add_subcommand("constants", "default constants of the digit/prime inequality");
        s->add_option("--base", ba.base, "base b >= 2");
        bsubs.push_back(s);
    }
    {
        auto* s = bd->add_subcommand("gap", "slack of the digit/prime inequality for one integer");
        s->add_option("--n", ba.n, "integer n >= 16")->required();
        s->add_option("--base", ba.base, "base b >= 2");
        s->add_option("--c", ba.c, "override c");
        s->add_option("--C", ba.big_c, "override C");
        s->add_option("--budget", ba.budget, "factoring effort");
        bsubs.push_back(s);
    }
    {
        auto* s = bd->add_subcommand("smooth-digits", "the three smooth-versus-digits assertions");
        s->add_option("--n", ba.n, "integer n")->required();
        s->add_option("--base", ba.base, "base b >= 2");
        bsubs.push_back(s);
    }

    SurveyArgs sa;
    auto* sv = app.add_subcommand("survey", "batch surveys");
    sv->require_subcommand(1);
    auto* sv_sparse = sv->add_subcommand("sparse", "survey the sparse sequence");
    sv_sparse->add_option("--base", sa.base, "base b >= 2");
    sv_sparse->add_option("--k", sa.k, "at most k nonzero digits");
    sv_sparse->add_option("--f", sa.f_family, "digit budget family: const | loglog | sqrt");
    sv_sparse->add_option("--f-param", sa.f_param, "parameter c of the family");
    sv_sparse->add_option("--f-cap", sa.f_cap, "digit cap per round for non-monotone families");
    sv_sparse->add_option("--take", sa.take, "number of terms J");
    sv_sparse->add_option("--budget", sa.budget, "factoring effort per term");
    sv_sparse->add_option("--eps", sa.eps, "epsilon");
    sv_sparse->add_option("--delta0", sa.delta0, "delta0 in (0,1]");
    sv_sparse->add_option("--c", sa.c, "override c of the digit/prime inequality");
    sv_sparse->add_option("--C", sa.big_c, "override C of the digit/prime inequality");
    sv_sparse->add_option("--chunk", sa.chunk, "terms per parallel batch");
    sv_sparse->add_flag("--serial", sa.serial, "use the serial reference path");
    auto* sv_stewart = sv->add_subcommand("stewart", "nonzero digits of a^n in base b");
    sv_stewart->add_option("--a", sa.a, "a >= 2");
    sv_stewart->add_option("--base", sa.base, "base b >= 2");
    sv_stewart->add_option("--from", sa.from, "first n (>= 3)");
    sv_stewart->add_option("--to", sa.to, "last n");

    CycloArgs ca;
    auto* cy = app.add_subcommand("cyclo", "2^n + 1 through cyclotomic values");
    cy->add_option("--n", ca.n, "exponent n");
    cy->add_option("--from", ca.from, "first n of a range");
    cy->add_option("--to", ca.to, "last n of a range");
    cy->add_option("--budget", ca.budget, "factoring effort");
    cy->add_option("--c", ca.c, "c for the size check");

    SearchArgs ra;
    auto* se = app.add_subcommand("search", "S-smooth integers with few nonzero digits");
    se->add_option("--base", ra.base, "base b >= 2");
    se->add_option("--k", ra.k, "at most k nonzero digits");
    se->add_option("--primes", ra.primes, "prime set S")->required();
    se->add_option("--limit", ra.limit, "value bound")->required();
    se->add_option("--eps", ra.eps, "epsilon");

    std::vector<std::string> argv_store{"smoothdigits"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    Emitter em{format == "csv" ? Format::csv : format == "plain" ? Format::plain : Format::jsonl, {}};
    if (threads > 0) omp_set_num_threads(threads);

    int code = kOk;
    try {
        if (en->parsed()) {
            code = do_enum(ea, em, *en);
        } else if (fc->parsed()) {
            code = do_factor(fa, em);
        } else if (tr->parsed()) {
            code = do_trace(ta, em);
        } else if (bd->parsed()) {
            for (auto* s : bsubs) {
                if (s->parsed()) code = do_bounds(s->get_name(), ba, em);
            }
        } else if (sv->parsed()) {
            code = sv_sparse->parsed() ? do_survey_sparse(sa, em, *sv_sparse, threads) : do_survey_stewart(sa, em);
        } else if (cy->parsed()) {
            code = do_cyclo(ca, em);
        } else if (se->parsed()) {
            code = do_search(ra, em);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const IncompleteFactorization& e) {
        err << "error: " << e.what() << "\n";
        return kPartial;
    }

    if (output.empty()) {
        out << em.data.str();
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            err << "error: cannot open " << output << "\n";
            return kUsage;
        }
        f << em.data.str();
    }
    if (code == kPartial) err << "note: some factorizations were left incomplete by the budget\n";
    return code;
}

}  // namespace smoothdigits::cli
