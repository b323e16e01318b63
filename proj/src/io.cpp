#include "smoothdigits/io.hpp"

namespace smoothdigits::io {

namespace {

std::string str(const mpz_class& z) { return z.get_str(); }

template <class T>
std::string opt_str(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_same_v<T, mpz_class>) return v->get_str();
    else if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
    else if constexpr (std::is_floating_point_v<T>) return number(*v);
    else return std::to_string(*v);
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string factor_string(const Factorization& f) {
    std::string out;
    for (const auto& pp : f.pairs()) {
        if (!out.empty()) out += '*';
        out += pp.prime.get_str();
        if (pp.exponent != 1) out += '^' + std::to_string(pp.exponent);
    }
    return out;
}

void threshold_fields(std::vector<std::string>& row, const ThresholdCheck& c) {
    row.emplace_back(to_string(c.threshold.status()));
    row.push_back(opt_str(c.threshold.value()));
    row.push_back(opt_str(c.holds));
}

}  // namespace

Json header() { return Json{{"schema", kSchemaVersion}}; }

std::string number(double v) { return Json(v).dump(); }

Json to_json(const Threshold& t) {
    Json j{{"status", to_string(t.status())}};
    if (const auto v = t.value()) j["value"] = *v;
    return j;
}

Json to_json(const ThresholdCheck& c) {
    Json j = to_json(c.threshold);
    j["holds"] = c.holds ? Json(*c.holds) : Json(nullptr);
    return j;
}

Json to_json(const Factorization& f) {
    Json pairs = Json::array();
    for (const auto& pp : f.pairs()) pairs.push_back(Json::array({str(pp.prime), pp.exponent}));
    return pairs;
}

Json factor_summary(const Factorization& f, const PrimeSet* s) {
    Json j{{"n", str(f.n())}, {"factors", to_json(f)}, {"complete", f.complete()}, {"cofactor", str(f.cofactor())}};
    if (f.complete()) {
        j["P"] = str(greatest_prime_factor(f));
        j["omega"] = omega(f);
        j["Q"] = str(radical(f));
    } else {
        j["P"] = nullptr;
        j["omega"] = nullptr;
        j["Q"] = nullptr;
    }
    if (s) {
        const mpz_class part = s_part(f.n(), *s);
        j["s_part"] = str(part);
        j["s_unit"] = part == f.n();
    }
    return j;
}

Json to_json(const InequalityRow& r) {
    return Json{{"check", to_string(r.check)}, {"link", r.link},         {"lhs", r.lhs},
                {"relation", to_string(r.relation)}, {"rhs", r.rhs}, {"holds", r.holds},
                {"asserted", r.asserted}};
}

Json to_json(const TraceReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(to_json(row));
    return Json{{"branch", to_string(r.branch)},
                {"k", r.k},
                {"k_star", r.k_star},
                {"ell", r.ell ? Json(*r.ell) : Json(nullptr)},
                {"lambda", r.lambda.get_str()},
                {"p", r.p ? Json(*r.p) : Json(nullptr)},
                {"valuation", r.valuation ? Json(*r.valuation) : Json(nullptr)},
                {"size_hypothesis", r.size_hypothesis},
                {"rows", rows},
                {"all_hold", r.all_asserted_hold()}};
}

Json to_json(const GapReport& g) {
    return Json{{"lhs", g.lhs}, {"rhs", g.rhs}, {"gap", g.gap}, {"p_guarded", g.p_guarded}};
}

Json to_json(const SurveyRecord& r) {
    Json digits = Json::array();
    for (const auto& t : r.digits.terms()) digits.push_back(Json::array({t.exponent, t.digit}));
    const auto& f = r.factorization;
    Json j{{"type", "record"},
           {"j", r.index},
           {"value", str(r.value)},
           {"nz", r.digits.size()},
           {"digits", digits},
           {"complete", f.complete()},
           {"factors", to_json(f)},
           {"cofactor", str(f.cofactor())},
           {"P", r.gpf ? Json(str(*r.gpf)) : Json(nullptr)},
           {"omega", r.omega ? Json(*r.omega) : Json(nullptr)},
           {"Q", r.radical ? Json(str(*r.radical)) : Json(nullptr)},
           {"f", r.f_value ? Json(*r.f_value) : Json(nullptr)}};
    j["thresholds"] = Json{{"fixed_digit", to_json(r.fixed_digit)},
                           {"s_unit_digit", to_json(r.s_unit_digit)},
                           {"digit_budget", to_json(r.digit_budget)}};
    if (r.trace) {
        j["trace"] = Json{{"branch", to_string(r.trace->branch)},
                          {"ell", r.trace->ell ? Json(*r.trace->ell) : Json(nullptr)},
                          {"rows", r.trace->rows},
                          {"all_hold", r.trace->all_hold}};
    } else {
        j["trace"] = nullptr;
    }
    j["gap"] = r.gap ? to_json(*r.gap) : Json(nullptr);
    return j;
}

Json to_json(const WindowSummary& w) {
    return Json{{"type", "window"},
                {"t", w.t},
                {"first", w.first},
                {"last", w.last},
                {"complete", w.complete},
                {"partial", w.partial},
                {"min_P", w.min_gpf ? Json(str(*w.min_gpf)) : Json(nullptr)}};
}

Json to_json(const StewartRow& r) {
    return Json{{"n", r.n}, {"nz", r.nz}, {"bound", r.bound}, {"exceeds", r.exceeds}};
}

Json to_json(const CyclotomicReport& r) {
    Json pieces = Json::array();
    for (const auto& p : r.pieces) {
        pieces.push_back(Json{{"d", p.d},
                              {"phi", str(p.value)},
                              {"factors", to_json(p.factorization)},
                              {"complete", p.factorization.complete()},
                              {"cofactor", str(p.factorization.cofactor())}});
    }
    return Json{{"n", r.n},
                {"N", str(r.value)},
                {"pieces", pieces},
                {"identity", r.identity_holds},
                {"factors", to_json(r.factorization)},
                {"complete", r.factorization.complete()},
                {"P", r.gpf ? Json(str(*r.gpf)) : Json(nullptr)},
                {"min_c", to_json(r.min_exponent)},
                {"size_check", r.size_check ? Json(*r.size_check) : Json(nullptr)}};
}

Json to_json(const SearchHit& h) {
    return Json{{"value", str(h.value)}, {"nz", h.nz}, {"s_unit_digit", to_json(h.s_unit_digit)}};
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_field(fields[i]);
    }
    return out;
}

std::vector<std::string> survey_csv_header() {
    return {"j",           "value",          "nz",
            "top_exponent", "complete",      "cofactor",
            "P",           "omega",          "Q",
            "f",           "fixed_digit_status", "fixed_digit_value",
            "fixed_digit_holds", "s_unit_digit_status", "s_unit_digit_value",
            "s_unit_digit_holds", "digit_budget_status", "digit_budget_value",
            "digit_budget_holds", "branch",    "ell",
            "trace_all_hold", "gap_lhs",     "gap_rhs",
            "gap"};
}

std::vector<std::string> survey_csv_row(const SurveyRecord& r) {
    std::vector<std::string> row{std::to_string(r.index),
                                 str(r.value),
                                 std::to_string(r.digits.size()),
                                 std::to_string(r.digits.top_exponent()),
                                 bool_str(r.factorization.complete()),
                                 str(r.factorization.cofactor()),
                                 opt_str(r.gpf),
                                 opt_str(r.omega),
                                 opt_str(r.radical),
                                 opt_str(r.f_value)};
    threshold_fields(row, r.fixed_digit);
    threshold_fields(row, r.s_unit_digit);
    threshold_fields(row, r.digit_budget);
    if (r.trace) {
        row.emplace_back(to_string(r.trace->branch));
        row.push_back(opt_str(r.trace->ell));
        row.push_back(bool_str(r.trace->all_hold));
    } else {
        row.insert(row.end(), {"", "", ""});
    }
    if (r.gap) {
        row.push_back(number(r.gap->lhs));
        row.push_back(number(r.gap->rhs));
        row.push_back(number(r.gap->gap));
    } else {
        row.insert(row.end(), {"", "", ""});
    }
    return row;
}

std::vector<std::string> stewart_csv_header() { return {"n", "nz", "bound", "exceeds"}; }

std::vector<std::string> stewart_csv_row(const StewartRow& r) {
    return {std::to_string(r.n), std::to_string(r.nz), number(r.bound), bool_str(r.exceeds)};
}

std::vector<std::string> trace_csv_header() {
    return {"n", "branch", "k", "k_star", "ell", "lambda", "p", "valuation", "size_hypothesis",
            "check", "link", "lhs", "relation", "rhs", "holds", "asserted"};
}

std::vector<std::string> trace_csv_row(const mpz_class& n, const TraceReport& t, const InequalityRow& row) {
    return {str(n),
            std::string(to_string(t.branch)),
            std::to_string(t.k),
            std::to_string(t.k_star),
            opt_str(t.ell),
            t.lambda.get_str(),
            opt_str(t.p),
            opt_str(t.valuation),
            bool_str(t.size_hypothesis),
            std::string(to_string(row.check)),
            std::to_string(row.link),
            number(row.lhs),
            std::string(to_string(row.relation)),
            number(row.rhs),
            bool_str(row.holds),
            bool_str(row.asserted)};
}

std::vector<std::string> cyclo_csv_header() {
    return {"n", "N", "d", "phi", "identity", "complete", "factors", "P", "min_c_status", "min_c", "size_check"};
}

std::vector<std::string> cyclo_csv_row(const CyclotomicReport& r) {
    std::string ds, phis;
    for (const auto& p : r.pieces) {
        if (!ds.empty()) {
            ds += ' ';
            phis += ' ';
        }
        ds += std::to_string(p.d);
        phis += str(p.value);
    }
    return {std::to_string(r.n),
            str(r.value),
            ds,
            phis,
            bool_str(r.identity_holds),
            bool_str(r.factorization.complete()),
            factor_string(r.factorization),
            opt_str(r.gpf),
            std::string(to_string(r.min_exponent.status())),
            opt_str(r.min_exponent.value()),
            opt_str(r.size_check)};
}

std::vector<std::string> search_csv_header() {
    return {"value", "nz", "s_unit_digit_status", "s_unit_digit_value", "s_unit_digit_holds"};
}

std::vector<std::string> search_csv_row(const SearchHit& h) {
    std::vector<std::string> row{str(h.value), std::to_string(h.nz)};
    threshold_fields(row, h.s_unit_digit);
    return row;
}

std::vector<std::string> factor_csv_header() {
    return {"n", "factors", "complete", "cofactor", "P", "omega", "Q", "s_part"};
}

std::vector<std::string> factor_csv_row(const Factorization& f, const PrimeSet* s) {
    std::vector<std::string> row{str(f.n()), factor_string(f), bool_str(f.complete()), str(f.cofactor())};
    if (f.complete()) {
        row.push_back(str(greatest_prime_factor(f)));
        row.push_back(std::to_string(omega(f)));
        row.push_back(str(radical(f)));
    } else {
        row.insert(row.end(), {"", "", ""});
    }
    row.push_back(s ? str(s_part(f.n(), *s)) : "");
    return row;
}

}  // namespace smoothdigits::io
