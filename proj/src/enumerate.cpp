#include "smoothdigits/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace smoothdigits {

namespace {

struct RoundBuilder {
    Base b;
    std::uint64_t m;
    unsigned middle_limit;
    std::vector<mpz_class> powers;
    std::vector<mpz_class>* out;

    // Adds digits at positions below `below` (and above 0) to `acc`.
    void extend(const mpz_class& acc, std::uint64_t below, unsigned used) {
        out->push_back(acc);
        if (used == middle_limit) return;
        mpz_class next;
        for (std::uint64_t pos = 1; pos < below; ++pos) {
            for (unsigned long d = 1; d < b; ++d) {
                next = acc + powers[pos] * d;
                extend(next, pos, used + 1);
            }
        }
    }
};

}  // namespace

SparseSpec SparseSpec::fixed(Base b, unsigned k) {
    if (b < 2) throw DomainError("base must be at least 2");
    if (k < 2) throw DomainError("fixed digit bound must be at least 2");
    SparseSpec s;
    s.base = b;
    s.max_nonzero = k;
    return s;
}

SparseSpec SparseSpec::variable(Base b, DigitBudget f) {
    if (b < 2) throw DomainError("base must be at least 2");
    if (!f.f) throw DomainError("digit budget function is empty");
    SparseSpec s;
    s.base = b;
    s.max_nonzero = 0;
    s.budget = std::move(f);
    return s;
}

std::vector<mpz_class> sparse_round(Base b, std::uint64_t m, unsigned max_nz) {
    std::vector<mpz_class> out;
    if (max_nz == 0) return out;
    if (m == 0) {
        for (unsigned long d = 1; d < b; ++d) out.emplace_back(d);
        return out;
    }
    if (max_nz < 2) return out;

    RoundBuilder builder{b, m, static_cast<unsigned>(std::min<std::uint64_t>(max_nz - 2, m - 1)), {}, &out};
    builder.powers.resize(m + 1);
    builder.powers[0] = 1;
    for (std::uint64_t i = 1; i <= m; ++i) builder.powers[i] = builder.powers[i - 1] * static_cast<unsigned long>(b);

    for (unsigned long top = 1; top < b; ++top) {
        for (unsigned long low = 1; low < b; ++low) {
            const mpz_class acc = builder.powers[m] * top + low;
            builder.extend(acc, m, 0);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SparseSequence::SparseSequence(SparseSpec spec, StreamBudget budget)
    : spec_(std::move(spec)), budget_(std::move(budget)) {
    if (spec_.base < 2) throw DomainError("base must be at least 2");
    if (!spec_.budget && spec_.max_nonzero < 2) throw DomainError("fixed digit bound must be at least 2");
    if (spec_.budget && !budget_.max_top_exponent) budget_.max_top_exponent = kDefaultMaxTopExponent;
}

unsigned SparseSequence::round_digit_limit(std::uint64_t m) const {
    const auto width = static_cast<unsigned>(std::min<std::uint64_t>(m + 1, 1u << 20));
    if (!spec_.budget) return std::min(spec_.max_nonzero, width);
    const auto& fb = *spec_.budget;
    if (!fb.monotone) return std::min(fb.cap, width);
    mpz_class top;
    mpz_ui_pow_ui(top.get_mpz_t(), static_cast<unsigned long>(spec_.base), m + 1);
    top -= 1;
    const double f_top = fb.f(top);
    if (!(f_top >= 1.0)) return 1;
    return static_cast<unsigned>(std::min<double>(std::floor(f_top), width));
}

bool SparseSequence::fill_round() {
    while (pending_.empty()) {
        const std::uint64_t m = next_round_;
        if (budget_.max_top_exponent && m > *budget_.max_top_exponent) return false;
        if (budget_.max_value) {
            mpz_class low;
            mpz_ui_pow_ui(low.get_mpz_t(), static_cast<unsigned long>(spec_.base), m);
            if (low > *budget_.max_value) return false;
        }
        ++next_round_;
        auto round = sparse_round(spec_.base, m, round_digit_limit(m));
        for (auto& v : round) {
            if (spec_.budget) {
                const double f = spec_.budget->f(v);
                if (static_cast<double>(nz_count(v, spec_.base)) > f) continue;
            }
            pending_.push_back(std::move(v));
        }
    }
    return true;
}

std::optional<mpz_class> SparseSequence::next() {
    if (exhausted_ || emitted_ >= budget_.max_emissions) return std::nullopt;
    if (!fill_round()) {
        exhausted_ = true;
        return std::nullopt;
    }
    mpz_class v = std::move(pending_.front());
    pending_.pop_front();
    if (budget_.max_value && v > *budget_.max_value) {
        exhausted_ = true;
        return std::nullopt;
    }
    ++emitted_;
    return v;
}

void PowerSumSpec::validate() const {
    if (bases.size() < 2) throw DomainError("power-sum sequence needs k >= 2 bases");
    unsigned long g = 0;
    for (auto a : bases) {
        if (a == 0) throw DomainError("power-sum bases must be positive");
        g = std::gcd(g, a);
    }
    if (shared_divisor_check && g < 2) throw DomainError("power-sum bases must share a divisor >= 2");
}

PowerSumSequence::PowerSumSequence(PowerSumSpec spec, StreamBudget budget)
    : spec_(std::move(spec)), budget_(std::move(budget)) {
    spec_.validate();
    push(std::vector<unsigned long>(spec_.bases.size(), 1), 0);
}

void PowerSumSequence::push(std::vector<unsigned long> exps, std::size_t last) {
    mpz_class value = 1, term;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        mpz_ui_pow_ui(term.get_mpz_t(), spec_.bases[i], exps[i]);
        value += term;
    }
    heap_.push(Node{std::move(value), std::move(exps), last});
}

std::optional<mpz_class> PowerSumSequence::next() {
    if (emitted_ >= budget_.max_emissions) return std::nullopt;
    while (!heap_.empty()) {
        Node node = heap_.top();
        heap_.pop();
        if (budget_.max_value && node.value > *budget_.max_value) return std::nullopt;
        // Base 1 contributes a constant; its exponent is never bumped.
        for (std::size_t i = node.last; i < node.exps.size(); ++i) {
            if (spec_.bases[i] == 1) continue;
            auto exps = node.exps;
            ++exps[i];
            push(std::move(exps), i);
        }
        if (last_emitted_ && node.value == *last_emitted_) continue;
        last_emitted_ = node.value;
        ++emitted_;
        return node.value;
    }
    return std::nullopt;
}

SmoothSequence::SmoothSequence(const PrimeSet& primes, mpz_class limit)
    : primes_(primes.primes()), limit_(std::move(limit)) {
    if (limit_ < 1) throw DomainError("smooth stream limit must be positive");
    values_.emplace_back(1);
    cursor_.assign(primes_.size(), 0);
    candidate_ = primes_;
}

std::optional<mpz_class> SmoothSequence::next() {
    // Multiple-cursor merge: candidate_[i] = primes_[i] * values_[cursor_[i]].
    if (emitted_ < values_.size()) return values_[emitted_++];
    const auto it = std::min_element(candidate_.begin(), candidate_.end());
    mpz_class v = *it;
    if (v > limit_) return std::nullopt;
    values_.push_back(v);
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (candidate_[i] == v) candidate_[i] = primes_[i] * values_[++cursor_[i]];
    }
    ++emitted_;
    return v;
}

}  // namespace smoothdigits
