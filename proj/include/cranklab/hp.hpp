#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace cranklab {

// RAII wrapper over mpfr_t. Every arithmetic helper takes an explicit
// rounding mode so that bound computations can round in whichever direction
// keeps an inequality check conservative; plain value computations use
// round-to-nearest.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Scientific decimal string with explicit exponent, e.g. "1.2345e+45".
    std::string str(int sig_digits = 30) const;

    static Real pi(mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real of(long x, mpfr_prec_t prec);
    static Real of(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real of(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
    static Real of_str(const char* decimal, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

private:
    mpfr_t v_;
};

// Comparisons are exact (no rounding involved).
inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }

// Result precision is the max of the operand precisions.
Real r_add(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_sub(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_mul(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_div(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_neg(const Real& a);
Real r_abs(const Real& a);
Real r_sqrt(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_exp(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_log(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_sinh(const Real& a, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_pow(const Real& a, const Real& b, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_mul_si(const Real& a, long b, mpfr_rnd_t rnd = MPFR_RNDN);
Real r_div_si(const Real& a, long b, mpfr_rnd_t rnd = MPFR_RNDN);

struct Complex {
    Real re, im;
    explicit Complex(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
};

Complex c_add(const Complex& a, const Complex& b);
Complex c_sub(const Complex& a, const Complex& b);
Complex c_mul(const Complex& a, const Complex& b);
Complex c_scale(const Complex& a, const Real& s);
Complex c_div_real(const Complex& a, const Real& s);
Complex c_conj(const Complex& a);
Real c_abs(const Complex& a);

// e^{i*pi*t} for exact rational t; t is reduced mod 2 in exact arithmetic
// before any rounding happens, so huge phases lose no accuracy.
Complex exp_i_pi(const mpq_class& t, mpfr_prec_t prec);

// sin(pi*t) for exact rational t, same exact reduction.
Real sin_pi(const mpq_class& t, mpfr_prec_t prec);

} // namespace cranklab
