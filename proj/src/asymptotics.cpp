#include "cranklab/asymptotics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "cranklab/errors.hpp"
#include "cranklab/modular.hpp"
#include "cranklab/partition.hpp"

namespace cranklab {

Real mu_of(long n, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    return mu_of(mpz_class(n), prec, rnd);
}

Real mu_of(const mpz_class& n, mpfr_prec_t prec, mpfr_rnd_t rnd) {
    mpz_class radicand = 24 * n - 1;
    if (radicand < 0) throw std::domain_error("mu(n) needs 24n - 1 >= 0");
    return r_sqrt(Real::of(radicand, prec, rnd), rnd);
}

mpfr_prec_t working_precision(long n, mpfr_prec_t requested) {
    double mu = std::sqrt(24.0 * static_cast<double>(n) + 1.0);
    auto fl = static_cast<mpfr_prec_t>(3.14159265358979 * mu / (6.0 * 0.69314718055994) + 96.0) + 1;
    return std::max(requested, fl);
}

LehmerBounds lehmer_bounds(long n, mpfr_prec_t prec) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    const mpfr_rnd_t up = MPFR_RNDU, dn = MPFR_RNDD;
    Real one = Real::of(1L, prec);
    Real N = Real::of(mpz_class(n), prec);

    // lower bound rounded up: checking "lower < p(n)" is then conservative;
    // (1 - 1/sqrt(n)) rounds up via 1/sqrt(n) rounded down
    Real lo;
    {
        Real e = r_exp(r_div_si(r_mul(Real::pi(prec, up), mu_of(n, prec, up), up), 6, up), up);
        Real inv_root = r_div(one, r_sqrt(N, up), dn);
        Real factor = r_sub(one, inv_root, up);
        lo = r_mul(r_sqrt(Real::of(3L, prec), up), factor, up);
        lo = r_div_si(lo, 12, up);
        lo = r_div(lo, N, up);
        lo = r_mul(lo, e, up);
    }
    // upper bound rounded down, mirror image
    Real hi;
    {
        Real e = r_exp(r_div_si(r_mul(Real::pi(prec, dn), mu_of(n, prec, dn), dn), 6, dn), dn);
        Real inv_root = r_div(one, r_sqrt(N, up), dn);
        Real factor = r_add(one, inv_root, dn);
        hi = r_mul(r_sqrt(Real::of(3L, prec), dn), factor, dn);
        hi = r_div_si(hi, 12, dn);
        hi = r_div(hi, N, dn);
        hi = r_mul(hi, e, dn);
    }
    return {lo, hi};
}

Real hardy_ramanujan_estimate(long n, mpfr_prec_t prec) {
    if (n < 1) throw std::domain_error("n must be >= 1");
    mpq_class two_thirds_n(2 * mpz_class(n), mpz_class(3));
    two_thirds_n.canonicalize();
    Real arg = r_mul(Real::pi(prec), r_sqrt(Real::of(two_thirds_n, prec)));
    Real num = r_exp(arg);
    Real den = r_mul_si(r_mul(r_sqrt(Real::of(3L, prec)), Real::of(mpz_class(n), prec)), 4);
    return r_div(num, den);
}

ErrorBudget error_budget(long Q, long n, mpfr_prec_t prec) {
    if (Q < 2 || n < 1) throw std::domain_error("need Q >= 2, n >= 1");
    const mpfr_rnd_t up = MPFR_RNDU;
    Real N = Real::of(mpz_class(n), prec);
    Real n14 = r_pow(N, Real::of(mpq_class(1, 4), prec), up);
    Real n38 = r_pow(N, Real::of(mpq_class(3, 8), prec), up);

    ErrorBudget b{Real(prec), Real(prec), Real(prec), Real(prec),
                  Real(prec), Real(prec), Real(prec), Real(prec)};
    b.s_err = r_mul(Real::of(mpq_class(3309, 10), prec, up), n14, up);
    mpq_class t_coef = 59071 * mpq_class(Q) + mpq_class(93005, 100);
    t_coef.canonicalize();
    b.t_err = r_mul(Real::of(t_coef, prec, up), n14, up);
    b.s1_err = r_mul(Real::of(1059L, prec), n14, up);
    b.s2_err = r_mul(Real::of(22306L, prec), n14, up);
    b.sigma1_i_err = r_mul(Real::of(1965L, prec), n38, up);
    b.sigma2_i_err = Real::of(113883L * Q, prec);
    b.total = r_add(r_add(r_add(b.s_err, b.t_err, up), r_add(b.s1_err, b.s2_err, up), up),
                    r_add(b.sigma1_i_err, b.sigma2_i_err, up), up);
    Real n38_down = r_pow(N, Real::of(mpq_class(3, 8), prec), MPFR_RNDD);
    b.merged = r_mul(Real::of(172954L * Q + 26591L, prec), n38_down, MPFR_RNDD);
    return b;
}

namespace {
mpfr_rnd_t flip(mpfr_rnd_t d) {
    if (d == MPFR_RNDU) return MPFR_RNDD;
    if (d == MPFR_RNDD) return MPFR_RNDU;
    return d;
}

// decay rate x of e^{-x pi mu/6}: 1 - 1/Q below 11, 1 - sqrt(1+12(1/Q^2-1/Q))
// at and above 11. dir rounds the rate itself.
Real deviation_rate(long Q, mpfr_prec_t prec, mpfr_rnd_t dir) {
    if (Q < 11) {
        mpq_class rate(Q - 1, Q);
        rate.canonicalize();
        return Real::of(rate, prec, dir);
    }
    mpz_class q(Q);
    mpq_class radicand(q * q - 12 * q + 12, q * q);
    radicand.canonicalize();
    if (radicand < 0) throw std::domain_error("radicand negative");
    Real root = r_sqrt(Real::of(radicand, prec, flip(dir)), flip(dir));
    return r_sub(Real::of(1L, prec), root, dir);
}

long deviation_coef(long Q) { return 4093000 * Q + 629200; } // 10^5 (40.93 Q + 6.292)
} // namespace

Real deviation_bound(long Q, long n, mpfr_prec_t prec, mpfr_rnd_t dir) {
    if (Q < 3 || Q % 2 == 0) throw std::domain_error("Q must be odd >= 3");
    if (n < 1) throw std::domain_error("n must be >= 1");
    // exponent stays far inside mpfr range for any long n we accept here;
    // the log variant exists for astronomically large n
    double x_est = 3.1416 * std::sqrt(24.0 * static_cast<double>(n)) / 6.0;
    if (x_est > 1e15) throw std::domain_error("exponent out of linear range; use deviation_bound_log");

    mpfr_rnd_t anti = flip(dir);
    Real rate = deviation_rate(Q, prec, anti); // larger rate => smaller bound
    Real mu = mu_of(n, prec, anti);
    Real expo = r_div_si(r_mul(r_mul(rate, Real::pi(prec, anti), anti), mu, anti), 6, anti);
    Real decay = r_exp(r_neg(expo), dir);
    Real n118 = r_pow(Real::of(mpz_class(n), prec), Real::of(mpq_class(11, 8), prec), dir);
    return r_mul(r_mul(Real::of(deviation_coef(Q), prec), decay, dir), n118, dir);
}

Real deviation_bound_log(long Q, const mpz_class& n, mpfr_prec_t prec, mpfr_rnd_t dir) {
    if (Q < 3 || Q % 2 == 0) throw std::domain_error("Q must be odd >= 3");
    if (n < 1) throw std::domain_error("n must be >= 1");
    mpfr_rnd_t anti = flip(dir);
    Real rate = deviation_rate(Q, prec, anti);
    Real mu = mu_of(n, prec, anti);
    Real expo = r_div_si(r_mul(r_mul(rate, Real::pi(prec, anti), anti), mu, anti), 6, anti);
    Real log_coef = r_log(Real::of(deviation_coef(Q), prec), dir);
    Real log_n = r_log(Real::of(n, prec, dir), dir);
    Real power = r_mul(Real::of(mpq_class(11, 8), prec), log_n, dir);
    return r_sub(r_add(log_coef, power, dir), expo, dir);
}

Real refined_three_term_bound(long Q, long n, mpfr_prec_t prec) {
    if (Q < 3 || Q % 2 == 0) throw std::domain_error("Q must be odd >= 3");
    Real mu = mu_of(n, prec);
    Real pimu6 = r_div_si(r_mul(Real::pi(prec), mu), 6);
    Real N = Real::of(mpz_class(n), prec);
    Real n54 = r_pow(N, Real::of(mpq_class(5, 4), prec));
    Real n118 = r_pow(N, Real::of(mpq_class(11, 8), prec));

    // 20.79 e^{(1/Q - 1) pi mu/6} n^{5/4}
    mpq_class r1(1 - Q, Q);
    r1.canonicalize();
    Real t1 = r_mul(r_mul(Real::of(mpq_class(2079, 100), prec),
                          r_exp(r_mul(Real::of(r1, prec), pimu6))),
                    n54);

    Real total = t1;
    if (Q >= 11) {
        // (4.553 Q + 81.96) e^{(sqrt(24 delta0) - 1) pi mu/6} n^{5/4}
        mpq_class rad = 24 * delta0_of(Q);
        rad.canonicalize();
        Real root = r_sqrt(Real::of(rad, prec));
        Real expo = r_mul(r_sub(root, Real::of(1L, prec)), pimu6);
        mpq_class coef = mpq_class(4553, 1000) * Q + mpq_class(8196, 100);
        coef.canonicalize();
        total = r_add(total, r_mul(r_mul(Real::of(coef, prec), r_exp(expo)), n54));
    }

    Real t3 = r_mul(r_mul(Real::of(deviation_coef(Q), prec), r_exp(r_neg(pimu6))), n118);
    return r_add(total, t3);
}

// ---- main terms ----

namespace {
struct TermJob {
    long j;   // 1..Q-1
    int which; // 1 or 2
    long k;
    long s;   // second sum only
    int sg;   // +1 / -1, second sum only
};

long isqrt_long(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// One grid of evaluation jobs in the canonical deterministic order.
std::vector<TermJob> build_jobs(long Q, long n) {
    std::vector<TermJob> jobs;
    long K = isqrt_long(n);
    for (long j = 1; j < Q; ++j) {
        long g = std::gcd(j, Q);
        long c = Q / g;
        for (long k = c; k <= K; k += c) jobs.push_back({j, 1, k, 0, 0});
        long a = j / g;
        for (long k = 1; k <= K; ++k) {
            if (k % c == 0) continue;
            for (long s = 0; s < c; ++s) {
                for (int sg = 0; sg < 2; ++sg) {
                    Sign sign = (sg == 0) ? Sign::plus : Sign::minus;
                    if (delta_param(a, c, k, s, sign) > 0)
                        jobs.push_back({j, 2, k, s, sg});
                }
            }
        }
    }
    return jobs;
}

Complex eval_job(const TermJob& t, long Q, long n, const Real& pimu6, mpfr_prec_t prec) {
    long g = std::gcd(t.j, Q);
    long a = t.j / g;
    long c = Q / g;
    Real rk = r_sqrt(Real::of(t.k, prec));
    if (t.which == 1) {
        Complex b = b_tilde(a, c, t.k, -static_cast<long long>(n), 0, prec);
        Real weight = r_sinh(r_div_si(pimu6, t.k));
        return c_scale(c_div_real(b, rk), weight);
    }
    Sign sign = (t.sg == 0) ? Sign::plus : Sign::minus;
    mpq_class delta = delta_param(a, c, t.k, t.s, sign);
    mpq_class m = m_param(a, c, t.k, t.s, sign);
    if (m.get_den() != 1)
        throw integrality_error("non-integer m with delta > 0 at j=" + std::to_string(t.j) +
                                " k=" + std::to_string(t.k) + " s=" + std::to_string(t.s));
    long long mi = m.get_num().get_si();
    Complex d = d_sum(a, c, t.k, -static_cast<long long>(n), mi, prec);
    mpq_class rad = 24 * delta;
    rad.canonicalize();
    Real weight = r_sinh(r_div_si(r_mul(r_sqrt(Real::of(rad, prec)), pimu6), t.k));
    return c_scale(c_div_real(d, rk), weight);
}
} // namespace

MainTermParts main_term_parts(long Q, long n, mpfr_prec_t prec, bool parallel) {
    if (Q < 3 || Q % 2 == 0) throw std::domain_error("Q must be odd >= 3");
    if (n < 2) throw std::domain_error("n must be >= 2");
    mpfr_prec_t wp = working_precision(n, prec);

    MainTermParts parts;
    parts.Q = Q;
    parts.n = n;
    parts.prec = wp;
    parts.sum1.assign(static_cast<size_t>(Q - 1), Complex(wp));
    parts.sum2.assign(static_cast<size_t>(Q - 1), Complex(wp));

    Real mu = mu_of(n, wp);
    Real pimu6 = r_div_si(r_mul(Real::pi(wp), mu), 6);

    std::vector<TermJob> jobs = build_jobs(Q, n);
    std::vector<Complex> results(jobs.size(), Complex(wp));

    // Terms are independent; the reduction below walks them in grid order,
    // so the parallel fill changes nothing about the result bits.
    long count = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < count; ++i)
        results[static_cast<size_t>(i)] = eval_job(jobs[static_cast<size_t>(i)], Q, n, pimu6, wp);

    for (size_t i = 0; i < jobs.size(); ++i) {
        auto& dst = (jobs[i].which == 1) ? parts.sum1[static_cast<size_t>(jobs[i].j - 1)]
                                         : parts.sum2[static_cast<size_t>(jobs[i].j - 1)];
        dst = c_add(dst, results[i]);
    }

    // prefactors: 4 sqrt(3) i / mu on the first sum, 8 sqrt(3) / mu on the second
    Real four_rt3_over_mu = r_div(r_mul_si(r_sqrt(Real::of(3L, wp)), 4), mu);
    Real eight_rt3_over_mu = r_div(r_mul_si(r_sqrt(Real::of(3L, wp)), 8), mu);
    for (long j = 1; j < Q; ++j) {
        Complex& s1 = parts.sum1[static_cast<size_t>(j - 1)];
        s1 = c_mul(Complex(Real::of(0L, wp), four_rt3_over_mu), s1);
        Complex& s2 = parts.sum2[static_cast<size_t>(j - 1)];
        s2 = c_scale(s2, eight_rt3_over_mu);
    }
    return parts;
}

Complex assemble_main_term(const MainTermParts& parts, long r, int which) {
    mpfr_prec_t wp = parts.prec;
    Complex acc(wp);
    for (long j = 1; j < parts.Q; ++j) {
        mpq_class ang(-2 * r * j, parts.Q);
        ang.canonicalize();
        Complex z = exp_i_pi(ang, wp);
        const Complex& part = (which == 1) ? parts.sum1[static_cast<size_t>(j - 1)]
                                           : parts.sum2[static_cast<size_t>(j - 1)];
        acc = c_add(acc, c_mul(z, part));
    }
    return c_div_real(acc, Real::of(parts.Q, wp));
}

Complex main_term_1(long r, long Q, long n, mpfr_prec_t prec) {
    return assemble_main_term(main_term_parts(Q, n, prec), r, 1);
}

Complex main_term_2(long r, long Q, long n, mpfr_prec_t prec) {
    return assemble_main_term(main_term_parts(Q, n, prec), r, 2);
}

EstimateBreakdown estimate_from_parts(const MainTermParts& parts, long r,
                                      const mpz_class& p_n, double realness_tol) {
    mpfr_prec_t wp = parts.prec;
    Complex m1 = assemble_main_term(parts, r, 1);
    Complex m2 = assemble_main_term(parts, r, 2);

    EstimateBreakdown e{
        r, parts.Q, parts.n, wp,
        Real(wp), Real(wp), Real(wp), Real(wp), Real(wp),
        error_budget(parts.Q, parts.n, wp)};
    e.p_over_q = r_div_si(Real::of(p_n, wp), parts.Q);
    e.main1 = m1.re;
    e.main2 = m2.re;
    e.imag_residue = r_abs(r_add(m1.im, m2.im));
    e.total = r_add(r_add(e.p_over_q, e.main1), e.main2);

    Real scale = r_abs(e.total);
    if (scale < Real::of(1L, wp)) scale = Real::of(1L, wp);
    Real tol(wp);
    mpfr_set_d(tol.raw(), realness_tol, MPFR_RNDN);
    if (e.imag_residue > r_mul(scale, tol))
        throw consistency_error("imaginary residue above realness tolerance");
    return e;
}

EstimateBreakdown estimate_M(long r, long Q, long n, mpfr_prec_t prec, double realness_tol) {
    if (n < 2) throw std::domain_error("n must be >= 2");
    MainTermParts parts = main_term_parts(Q, n, prec);
    mpz_class p_n = partition_counts(n).back();
    return estimate_from_parts(parts, r, p_n, realness_tol);
}

std::string estimate_json(const EstimateBreakdown& e, const mpz_class* exact) {
    std::ostringstream os;
    auto field = [&](const char* name, const Real& v, bool comma = true) {
        os << "\"" << name << "\": \"" << v.str(40) << "\"";
        if (comma) os << ", ";
    };
    os << "{";
    os << "\"Q\": " << e.Q << ", \"r\": " << e.r << ", \"n\": " << e.n << ", ";
    field("p_over_Q", e.p_over_q);
    field("main1", e.main1);
    field("main2", e.main2);
    field("error_bound", e.budget.total);
    field("total", e.total);
    field("imag_residue", e.imag_residue);
    if (exact != nullptr) {
        os << "\"exact\": \"" << exact->get_str() << "\", ";
        Real residual = r_abs(r_sub(Real::of(*exact, e.total.prec()), e.total));
        field("residual", residual);
    }
    os << "\"precision_bits\": " << e.precision_bits;
    os << "}";
    return os.str();
}

std::vector<BoundCheck> elementary_bounds_check(long Q, mpfr_prec_t prec) {
    if (Q < 3 || Q % 2 == 0) throw std::domain_error("Q must be odd >= 3");
    const mpfr_rnd_t up = MPFR_RNDU, dn = MPFR_RNDD;
    std::vector<BoundCheck> out;
    auto push = [&](const std::string& name, const Real& lhs, const Real& rhs) {
        out.push_back({name, lhs.to_double(), rhs.to_double(), lhs <= rhs});
    };

    // (1 + log((Q-1)/2)) / (pi (1 - pi^2/24) Q) <= 0.1902
    {
        mpq_class half(Q - 1, 2);
        half.canonicalize();
        Real num = r_add(Real::of(1L, prec), r_log(Real::of(half, prec, up), up), up);
        Real pi_dn = Real::pi(prec, dn);
        Real pi_up = Real::pi(prec, up);
        Real inner = r_sub(Real::of(1L, prec), r_div_si(r_mul(pi_up, pi_up, up), 24, up), dn);
        Real den = r_mul_si(r_mul(pi_dn, inner, dn), Q, dn);
        push("(1+log((Q-1)/2))/(pi(1-pi^2/24)Q) <= 0.1902",
             r_div(num, den, up), Real::of(mpq_class(1902, 10000), prec, dn));
    }
    // 1/(1 - e^{-pi/Q}) <= pi Q
    {
        Real pi_dn = Real::pi(prec, dn);
        Real inner = r_sub(Real::of(1L, prec), r_exp(r_neg(r_div_si(pi_dn, Q, dn)), up), dn);
        push("1/(1-e^{-pi/Q}) <= pi*Q",
             r_div(Real::of(1L, prec), inner, up), r_mul_si(pi_dn, Q, dn));
    }
    // 1/(1 - e^{-2pi/Q}) <= 2 pi Q
    {
        Real pi_dn = Real::pi(prec, dn);
        Real inner = r_sub(Real::of(1L, prec),
                           r_exp(r_neg(r_div_si(r_mul_si(pi_dn, 2, dn), Q, dn)), up), dn);
        push("1/(1-e^{-2pi/Q}) <= 2*pi*Q",
             r_div(Real::of(1L, prec), inner, up), r_mul_si(r_mul_si(pi_dn, 2, dn), Q, dn));
    }
    // 4/3 + 2^{5/4} <= 3.712
    {
        Real lhs = r_add(Real::of(mpq_class(4, 3), prec, up),
                         r_pow(Real::of(2L, prec), Real::of(mpq_class(5, 4), prec), up), up);
        push("4/3 + 2^{5/4} <= 3.712", lhs, Real::of(mpq_class(3712, 1000), prec, dn));
    }
    // max_j |sin(pi j/Q)| <= 1
    {
        Real worst = Real::of(0L, prec);
        for (long j = 1; j < Q; ++j) {
            mpq_class t(j, Q);
            t.canonicalize();
            Real v = r_abs(sin_pi(t, prec));
            if (v > worst) worst = v;
        }
        push("max_j |sin(pi j/Q)| <= 1", worst, Real::of(1L, prec));
    }
    // 1/(1 - 1/sqrt(2)) <= 3.415 (worst case of 1/(1-1/sqrt(n)) over n >= 2)
    {
        Real root = r_sqrt(Real::of(2L, prec), up);
        Real inner = r_sub(Real::of(1L, prec), r_div(Real::of(1L, prec), root, up), dn);
        push("1/(1-1/sqrt(2)) <= 3.415",
             r_div(Real::of(1L, prec), inner, up), Real::of(mpq_class(3415, 1000), prec, dn));
    }
    return out;
}

} // namespace cranklab
