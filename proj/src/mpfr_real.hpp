#pragma once

// Minimal RAII holder for mpfr_t. Every arithmetic call names its rounding
// direction explicitly; nothing here picks a default.

#include <gmpxx.h>
#include <mpfr.h>

namespace smoothdigits::detail {

inline constexpr mpfr_prec_t kWorkingPrecision = 256;

class Real {
public:
    explicit Real(mpfr_prec_t prec = kWorkingPrecision) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Real& operator=(const Real& other) {
        if (this != &other) mpfr_set(v_, other.v_, MPFR_RNDN);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }

    static Real from_ui(unsigned long x, mpfr_rnd_t rnd) {
        Real r;
        mpfr_set_ui(r.v_, x, rnd);
        return r;
    }
    static Real from_d(double x, mpfr_rnd_t rnd) {
        Real r;
        mpfr_set_d(r.v_, x, rnd);
        return r;
    }
    static Real from_z(const mpz_class& x, mpfr_rnd_t rnd) {
        Real r;
        mpfr_set_z(r.v_, x.get_mpz_t(), rnd);
        return r;
    }
    static Real from_q(const mpq_class& x, mpfr_rnd_t rnd) {
        Real r;
        mpfr_set_q(r.v_, x.get_mpq_t(), rnd);
        return r;
    }
    /// e rounded in the given direction.
    static Real euler(mpfr_rnd_t rnd) {
        Real one = from_ui(1, rnd);
        Real r;
        mpfr_exp(r.v_, one.v_, rnd);
        return r;
    }

    double to_d(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

private:
    mpfr_t v_;
};

inline Real log(const Real& x, mpfr_rnd_t rnd) {
    Real r;
    mpfr_log(r.get(), x.get(), rnd);
    return r;
}
inline Real mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_mul(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_div(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_add(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r;
    mpfr_sub(r.get(), a.get(), b.get(), rnd);
    return r;
}
inline Real pow_d(const Real& a, double e, mpfr_rnd_t rnd) {
    Real ex = Real::from_d(e, MPFR_RNDN);
    Real r;
    mpfr_pow(r.get(), a.get(), ex.get(), rnd);
    return r;
}
inline Real pow_ui(const Real& a, unsigned long e, mpfr_rnd_t rnd) {
    Real r;
    mpfr_pow_ui(r.get(), a.get(), e, rnd);
    return r;
}
inline Real max(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()) >= 0 ? a : b; }
inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.get(), b.get()); }

/// log|q| for a nonzero rational, rounded in the given direction.
inline Real log_abs(const mpq_class& q, mpfr_rnd_t rnd) {
    // Numerator and denominator separately so huge quotients stay exact.
    Real num = Real::from_z(abs(q.get_num()), rnd);
    Real den = Real::from_z(q.get_den(), rnd == MPFR_RNDU ? MPFR_RNDD : MPFR_RNDU);
    const mpfr_rnd_t opposite = rnd == MPFR_RNDU ? MPFR_RNDD : (rnd == MPFR_RNDD ? MPFR_RNDU : rnd);
    return sub(log(num, rnd), log(den, opposite), rnd);
}

}  // namespace smoothdigits::detail
