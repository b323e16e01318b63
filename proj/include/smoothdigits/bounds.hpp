#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "smoothdigits/digits.hpp"
#include "smoothdigits/factor.hpp"

namespace smoothdigits {

// ===========================================================================
// Linear forms in logarithms
// ===========================================================================

/// Data of a multiplicative linear form (x_1/y_1)^b_1 ... (x_n/y_n)^b_n - 1.
///
/// Heights are exact rationals. Because e is irrational, a height equal to
/// the double nearest e (which lies just below e) is accepted and lifted to
/// e inside the evaluators; every other height must dominate |x_i| and |y_i|.
class BoundInput {
public:
    static BoundInput make(std::vector<mpq_class> rationals, std::vector<std::int64_t> exponents,
                           std::vector<mpq_class> heights, double exponent_bound);

    /// Smallest legal data: A_i = max(|x_i|, |y_i|, e), B = max(3, |b_i|).
    static BoundInput minimal(std::vector<mpq_class> rationals, std::vector<std::int64_t> exponents);

    /// max(|x|, |y|, e) for one rational.
    static mpq_class natural_height(const mpq_class& r);

    std::size_t size() const noexcept { return rationals_.size(); }
    const std::vector<mpq_class>& rationals() const noexcept { return rationals_; }
    const std::vector<std::int64_t>& exponents() const noexcept { return exponents_; }
    const std::vector<mpq_class>& heights() const noexcept { return heights_; }
    double exponent_bound() const noexcept { return exponent_bound_; }

    /// Whether the product was verified to differ from 1 with exact
    /// arithmetic (skipped when the powers would be too large to form).
    bool product_checked() const noexcept { return product_checked_; }

private:
    std::vector<mpq_class> rationals_;
    std::vector<std::int64_t> exponents_;
    std::vector<mpq_class> heights_;
    double exponent_bound_ = 3;
    bool product_checked_ = false;
};

/// Matveev's lower bound for log|Lambda|:
///   -8 * 30^(n+3) * n^(9/2) * log(eB) * prod log A_i,
/// evaluated with outward rounding so the result never exceeds the true bound.
double matveev_lower_bound(const BoundInput& in);

/// Yu's upper bound for v_p(Lambda):
///   (16e)^(2(n+1)) n^(5/2) (log 2n)^2 p/(log p)^2 prod log A_i log B,
/// rounded upward.
double yu_valuation_bound(const BoundInput& in, const mpz_class& p);

// ===========================================================================
// Tracing the sparse-digit argument on a concrete integer
// ===========================================================================

enum class Branch {
    archimedean,  // top gap n_k >= 2 n_{k-1}: Lambda_a = N / (d_k b^n_k) - 1
    p_adic,       // otherwise: Lambda_u = N / (low part) - 1
};

enum class Check {
    archimedean_upper,  // log Lambda_a <= -(n_k/2 - 1) log b
    archimedean_lower,  // log Lambda_a >= Matveev bound
    valuation_lower,    // chain of lower bounds for v_p(Lambda_u), links 1..4
    valuation_upper,    // v_p(Lambda_u) < Yu bound
};

enum class Relation { le, ge, lt, gt };

std::string_view to_string(Branch b);
std::string_view to_string(Check c);
std::string_view to_string(Relation r);

struct InequalityRow {
    Check check;
    int link = 0;  // position in the valuation chain, 0 elsewhere
    double lhs = 0;
    double rhs = 0;
    Relation relation = Relation::le;
    bool holds = false;
    /// False for the last valuation link when the size hypothesis fails;
    /// the row is still reported.
    bool asserted = true;
};

struct TraceReport {
    Branch branch = Branch::archimedean;
    unsigned k = 0;
    unsigned k_star = 1;
    std::optional<unsigned> ell;
    mpq_class lambda;
    std::optional<long> valuation;  // v_p(Lambda_u)
    std::optional<std::uint64_t> p;
    bool size_hypothesis = false;
    std::vector<InequalityRow> rows;

    bool all_asserted_hold() const;
};

/// Split index l for the p-adic branch: the least j in [1, k-3] with
/// n_{1+j} >= n_k^(j/(k-2)), else k-2. Comparisons are exact
/// (n_{1+j}^(k-2) >= n_k^j in integers). Requires k >= 3.
unsigned split_index(const DigitExpansion& e);

/// Recompute every quantity of the sparse-digit argument for N. Requires a
/// complete factorization of N, b not dividing N, and at least two nonzero
/// digits.
TraceReport trace_linear_forms(const mpz_class& n, Base b, const Factorization& f);

/// Explicit upper bound for the top exponent n_k of any N with k nonzero
/// base-b digits whose prime support is S, obtained by instantiating Matveev
/// (archimedean branch) and Yu (p-adic branch) with the concrete parameters
/// of each branch and solving the resulting transcendental inequalities.
struct TopExponentBound {
    unsigned k_star = 1;
    double log_archimedean = 0;            // log of the bound on n_k
    std::optional<double> log_p_adic;      // log of the bound on n_k^(1/(k-2))
    double log_value = 0;                  // log of the returned bound on n_k
    double value = 0;                      // exp(log_value), +inf on overflow
};

TopExponentBound top_exponent_bound(Base b, unsigned k, const PrimeSet& s);

// ===========================================================================
// Threshold functions
// ===========================================================================

/// Size of a positive quantity, stored as its natural logarithm so that
/// integers far beyond double range can be compared.
class Magnitude {
public:
    static Magnitude of(const mpz_class& n);
    static Magnitude of(double x);
    static Magnitude from_log(double log_value) { return Magnitude(log_value); }

    double log() const noexcept { return log_; }

    /// Iterated logarithms L_1..L_depth (L_1 = log x). nullopt when any of
    /// them is <= 0.
    std::optional<std::vector<double>> iterated_logs(int depth) const;

private:
    explicit Magnitude(double l) : log_(l) {}
    double log_;
};

/// Partial real-valued result: either a value or "not applicable" (an
/// iterated logarithm in the formula is not positive). Nonpositive values
/// are flagged degenerate.
class Threshold {
public:
    enum class Status { value, degenerate, not_applicable };

    static Threshold of(double v) { return Threshold(v > 0 ? Status::value : Status::degenerate, v); }
    static Threshold not_applicable() { return Threshold(Status::not_applicable, 0); }

    Status status() const noexcept { return status_; }
    bool applicable() const noexcept { return status_ != Status::not_applicable; }
    bool degenerate() const noexcept { return status_ == Status::degenerate; }
    std::optional<double> value() const {
        return applicable() ? std::optional<double>(value_) : std::nullopt;
    }

private:
    Threshold(Status s, double v) : status_(s), value_(v) {}
    Status status_;
    double value_;
};

std::string_view to_string(Threshold::Status s);

/// (1/(k-2) - eps) L2 L3 / L4 for integers with at most k >= 3 nonzero digits.
Threshold fixed_digit_gpf_threshold(Magnitude u, unsigned k, double eps);

/// Same shape with 1/(k-1), for the power-sum sequences (k >= 2).
Threshold power_sum_gpf_threshold(Magnitude v, unsigned k, double eps);

/// Psi_f(u) = log log u / f(u), u >= 3.
double psi(Magnitude u, double f_value);

/// (delta0 - eps) Psi log Psi / log log Psi; not applicable when Psi <= e.
Threshold digit_budget_gpf_threshold(Magnitude u, double f_value, double delta0, double eps);

/// (1 - eps) L2 / L3, the digit count lower bound for S-units.
Threshold s_unit_digit_threshold(Magnitude n, double eps);

/// The constants c (depending on b) and C (absolute) of the
/// digits-versus-prime-support inequality.
struct GapConstants {
    double c = 0;
    double big_c = 0;
};

/// Default constants obtained by taking logarithms of the instantiated
/// top-exponent bound; see README for the derivation.
GapConstants default_gap_constants(Base b);

struct GapReport {
    double lhs = 0;  // log log n / k
    double rhs = 0;  // c + log k + omega (C + log log P) + log log (k log P)
    double gap = 0;  // rhs - lhs
    bool p_guarded = false;  // P < 3 was replaced by 3
};

/// rhs - lhs of  log log n / k <= c + log k + omega (C + log log P) + log log (k log P).
/// Requires n >= 16, k >= 2, P >= 2.
GapReport digit_prime_gap(Magnitude n, unsigned k, const mpz_class& gpf, std::size_t omega, GapConstants constants);

/// The three smooth-versus-digits assertions for large n.
struct SmoothDigitRow {
    Threshold smooth_bound = Threshold::not_applicable();
    Threshold digit_bound = Threshold::not_applicable();
    bool applicable = false;
    bool smooth = false;
    bool violated = false;  // smooth and nz < digit bound
};

std::array<SmoothDigitRow, 3> smooth_digit_assertions(const mpz_class& n, std::size_t nz);

/// Smallest c with P <= N^(c / log log log N), i.e. log P * L3 / log N.
Threshold cyclotomic_min_exponent(Magnitude n, const mpz_class& gpf);

/// log P <= c log N / L3; nullopt when L3 <= 0.
std::optional<bool> cyclotomic_size_check(Magnitude n, const mpz_class& gpf, double c);

/// Parameters shared by the surveys.
struct ThresholdParams {
    double epsilon = 0.0;
    double delta0 = 1.0;
    std::optional<GapConstants> gap_constants;  // default_gap_constants(b) when unset
    double c_cyclotomic = 1.0;
};

}  // namespace smoothdigits
