#include "cranklab/hp.hpp"

#include <algorithm>
#include <cstdlib>

namespace cranklab {

std::string Real::str(int sig_digits) const {
    if (sig_digits < 2) sig_digits = 2;
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", sig_digits - 1, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real Real::pi(mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_const_pi(r.raw(), rnd);
    return r;
}

Real Real::of(long x, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_si(r.raw(), x, MPFR_RNDN);
    return r;
}

Real Real::of(const mpz_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_z(r.raw(), x.get_mpz_t(), rnd);
    return r;
}

Real Real::of(const mpq_class& x, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_q(r.raw(), x.get_mpq_t(), rnd);
    return r;
}

Real Real::of_str(const char* decimal, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    Real r(prec);
    mpfr_set_str(r.raw(), decimal, 10, rnd);
    return r;
}

namespace {
mpfr_prec_t join(const Real& a, const Real& b) {
    return std::max(a.prec(), b.prec());
}
} // namespace

Real r_add(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(join(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_sub(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(join(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_mul(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(join(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_div(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(join(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_neg(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real r_abs(const Real& a) {
    Real r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

Real r_sqrt(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_sqrt(r.raw(), a.raw(), rnd);
    return r;
}

Real r_exp(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_exp(r.raw(), a.raw(), rnd);
    return r;
}

Real r_log(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_log(r.raw(), a.raw(), rnd);
    return r;
}

Real r_sinh(const Real& a, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_sinh(r.raw(), a.raw(), rnd);
    return r;
}

Real r_pow(const Real& a, const Real& b, mpfr_rnd_t rnd) {
    Real r(join(a, b));
    mpfr_pow(r.raw(), a.raw(), b.raw(), rnd);
    return r;
}

Real r_mul_si(const Real& a, long b, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_mul_si(r.raw(), a.raw(), b, rnd);
    return r;
}

Real r_div_si(const Real& a, long b, mpfr_rnd_t rnd) {
    Real r(a.prec());
    mpfr_div_si(r.raw(), a.raw(), b, rnd);
    return r;
}

Complex c_add(const Complex& a, const Complex& b) {
    return {r_add(a.re, b.re), r_add(a.im, b.im)};
}

Complex c_sub(const Complex& a, const Complex& b) {
    return {r_sub(a.re, b.re), r_sub(a.im, b.im)};
}

Complex c_mul(const Complex& a, const Complex& b) {
    return {r_sub(r_mul(a.re, b.re), r_mul(a.im, b.im)),
            r_add(r_mul(a.re, b.im), r_mul(a.im, b.re))};
}

Complex c_scale(const Complex& a, const Real& s) {
    return {r_mul(a.re, s), r_mul(a.im, s)};
}

Complex c_div_real(const Complex& a, const Real& s) {
    return {r_div(a.re, s), r_div(a.im, s)};
}

Complex c_conj(const Complex& a) {
    return {a.re, r_neg(a.im)};
}

Real c_abs(const Complex& a) {
    Real r(std::max(a.re.prec(), a.im.prec()));
    mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
    return r;
}

namespace {
// t reduced into [0,2) in exact rational arithmetic.
mpq_class mod2(const mpq_class& t) {
    mpq_class half = t / 2;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), half.get_num_mpz_t(), half.get_den_mpz_t());
    mpq_class r = t - 2 * mpq_class(fl);
    r.canonicalize();
    return r;
}
} // namespace

Complex exp_i_pi(const mpq_class& t, mpfr_prec_t prec) {
    mpq_class r = mod2(t);
    Real theta = r_mul(Real::pi(prec + 16), Real::of(r, prec + 16));
    Complex out(prec);
    mpfr_sin_cos(out.im.raw(), out.re.raw(), theta.raw(), MPFR_RNDN);
    return out;
}

Real sin_pi(const mpq_class& t, mpfr_prec_t prec) {
    mpq_class r = mod2(t);
    Real theta = r_mul(Real::pi(prec + 16), Real::of(r, prec + 16));
    Real out(prec);
    mpfr_sin(out.raw(), theta.raw(), MPFR_RNDN);
    return out;
}

} // namespace cranklab
