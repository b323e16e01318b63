#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "smoothdigits/bounds.hpp"
#include "smoothdigits/digits.hpp"
#include "smoothdigits/enumerate.hpp"
#include "smoothdigits/factor.hpp"

namespace smoothdigits {

/// A threshold together with whether the surveyed quantity beat it.
/// `holds` is empty when the threshold is not applicable or the quantity is
/// unknown (partial factorization).
struct ThresholdCheck {
    Threshold threshold = Threshold::not_applicable();
    std::optional<bool> holds;
};

struct TraceSummary {
    Branch branch = Branch::archimedean;
    std::optional<unsigned> ell;
    std::size_t rows = 0;
    bool all_hold = false;  // every asserted row holds
};

struct SurveyRecord {
    std::uint64_t index = 0;  // j, starting at 1
    mpz_class value;
    DigitExpansion digits{2, {{0, 1}}};
    Factorization factorization;

    // Present only when the factorization is complete.
    std::optional<mpz_class> gpf;
    std::optional<std::size_t> omega;
    std::optional<mpz_class> radical;

    ThresholdCheck fixed_digit;   // P > threshold; not applicable for k < 3 or digit-budget mode
    ThresholdCheck s_unit_digit;  // nz >= threshold
    ThresholdCheck digit_budget;  // P > threshold; digit-budget mode only
    std::optional<double> f_value;

    std::optional<TraceSummary> trace;
    std::optional<GapReport> gap;
};

/// Minimum of P over the complete records with j in [2^t, 2^(t+1)).
struct WindowSummary {
    unsigned t = 0;
    std::uint64_t first = 0;
    std::uint64_t last = 0;
    std::size_t complete = 0;
    std::size_t partial = 0;
    std::optional<mpz_class> min_gpf;
};

struct SurveyOptions {
    Base base = 2;
    unsigned k = 2;                     // ignored when `budget_f` is set
    std::optional<DigitBudget> budget_f;
    std::uint64_t terms = 1;
    FactorBudget factor_budget;
    ThresholdParams params;
    int threads = 0;                    // 0: OpenMP default
    bool parallel = true;               // false: serial reference path
    std::size_t chunk = 64;
};

struct SurveySummary {
    std::uint64_t records = 0;
    std::uint64_t partial = 0;
    std::vector<WindowSummary> windows;
};

using RecordSink = std::function<void(const SurveyRecord&)>;

/// Survey the first J terms of the sparse sequence. Records reach the sink
/// in index order whichever path computes them.
SurveySummary sparse_survey(const SurveyOptions& opts, const RecordSink& sink);
std::vector<SurveyRecord> sparse_survey(const SurveyOptions& opts);

/// Everything a record carries, for one value. Exposed for tests.
SurveyRecord survey_record(std::uint64_t index, const mpz_class& value, const SurveyOptions& opts);

// ---------------------------------------------------------------------------

struct StewartRow {
    std::uint64_t n = 0;
    std::size_t nz = 0;    // nonzero base-b digits of a^n
    double bound = 0;      // log n / (2 log log n)
    bool exceeds = false;  // nz > bound
};

/// Least g with x = g^e for some e >= 1.
mpz_class minimal_root(const mpz_class& x);

/// a, b >= 2 are multiplicatively dependent iff they share a minimal root.
bool multiplicatively_independent(const mpz_class& a, const mpz_class& b);

/// One row per n in [n_lo, n_hi]; n_lo >= 3.
void stewart_survey(const mpz_class& a, Base b, std::uint64_t n_lo, std::uint64_t n_hi,
                    const std::function<void(const StewartRow&)>& sink);
std::vector<StewartRow> stewart_survey(const mpz_class& a, Base b, std::uint64_t n_lo, std::uint64_t n_hi);

// ---------------------------------------------------------------------------

int mobius(std::uint64_t n);

/// Phi_d(x) as an exact integer, x >= 2.
mpz_class cyclotomic_value(std::uint64_t d, unsigned long x);

struct CyclotomicPiece {
    std::uint64_t d = 0;
    mpz_class value;
    Factorization factorization;
};

struct CyclotomicReport {
    std::uint64_t n = 0;
    mpz_class value;  // 2^n + 1
    std::vector<CyclotomicPiece> pieces;
    bool identity_holds = false;
    Factorization factorization;        // merged from the pieces
    std::optional<mpz_class> gpf;       // complete factorizations only
    Threshold min_exponent = Threshold::not_applicable();
    std::optional<bool> size_check;     // at the supplied c
};

CyclotomicReport cyclotomic_smooth(std::uint64_t n, FactorBudget budget = {}, double c = 1.0);

// ---------------------------------------------------------------------------

struct SearchHit {
    mpz_class value;
    std::size_t nz = 0;
    ThresholdCheck s_unit_digit;  // nz >= (1 - eps) L2 / L3
};

/// S-smooth integers up to limit, not divisible by b, with at most k nonzero
/// digits, in increasing order.
std::vector<SearchHit> smooth_sparse_search(Base b, unsigned k, const PrimeSet& s, const mpz_class& limit,
                                            double eps = 0.0);

}  // namespace smoothdigits
