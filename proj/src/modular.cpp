#include "cranklab/modular.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "cranklab/errors.hpp"

namespace cranklab {

mpq_class sawtooth(const mpq_class& x) {
    if (x.get_den() == 1) return mpq_class(0);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class r = x - mpq_class(fl) - mpq_class(1, 2);
    r.canonicalize();
    return r;
}

namespace {
void require_coprime(long h, long k) {
    if (k < 1) throw std::domain_error("k must be >= 1");
    long hh = ((h % k) + k) % k;
    if (std::gcd(hh == 0 ? k : hh, k) != 1 && !(hh == 0 && k == 1))
        throw std::domain_error("gcd(h,k) must be 1");
}
} // namespace

mpq_class dedekind_sum(long h, long k) {
    require_coprime(h, k);
    long a = ((h % k) + k) % k;
    long b = k;
    mpq_class s = 0;
    int sign = 1;
    while (a > 0) {
        mpz_class A(a), B(b);
        mpq_class term(A * A + B * B + 1, 12 * A * B);
        term.canonicalize();
        term -= mpq_class(1, 4);
        if (sign > 0) s += term; else s -= term;
        long t = b % a;
        b = a;
        a = t;
        sign = -sign;
    }
    return s;
}

mpq_class dedekind_sum_direct(long h, long k) {
    require_coprime(h, k);
    if (k > 2000000)
        throw std::domain_error("direct Dedekind sum limited to k <= 2e6 (64-bit numerator)");
    long hh = ((h % k) + k) % k;
    // sum of (2u-k)(2(hu mod k)-k)/(4k^2); terms with hu == 0 mod k drop out
    long long acc = 0;
    for (long u = 1; u < k; ++u) {
        long r = static_cast<long>((static_cast<long long>(hh) * u) % k);
        if (r == 0) continue;
        acc += static_cast<long long>(2 * u - k) * static_cast<long long>(2 * r - k);
    }
    mpz_class num(static_cast<long>(acc));
    mpz_class den = 4 * mpz_class(k) * mpz_class(k);
    mpq_class s(num, den);
    s.canonicalize();
    return s;
}

long h_prime(long h, long k) {
    require_coprime(h, k);
    if (k == 1) return 0;
    long mod = (k % 2 == 1) ? k : 2 * k;
    // extended Euclid for h^{-1} mod `mod`
    long long r0 = mod, r1 = ((h % mod) + mod) % mod;
    long long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long r2 = r0 - q * r1;
        long long t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    long long inv = ((t0 % mod) + mod) % mod;
    return static_cast<long>(((-inv) % mod + mod) % mod);
}

Complex omega(long h, long k, mpfr_prec_t prec) {
    return exp_i_pi(dedekind_sum(h, k), prec);
}

SumParams sum_params(long a, long c, long k) {
    if (!(0 < a && a < c)) throw std::domain_error("need 0 < a < c");
    if (k < 1) throw std::domain_error("k must be >= 1");
    SumParams p;
    p.a = a; p.c = c; p.k = k;
    long g = std::gcd(c, k);
    p.c1 = c / g;
    p.k1 = k / g;
    p.l = (a * p.k1 - 1) % p.c1 + 1; // minimal positive solution; 1 when c1 = 1
    return p;
}

mpq_class delta_param(const SumParams& p, long s, Sign sg) {
    if (s < 0) throw std::domain_error("s must be >= 0");
    mpq_class x(p.l, p.c1);
    x.canonicalize();
    mpq_class out;
    if (sg == Sign::plus) {
        out = -(mpq_class(1, 2) + s) * x + x * x / 2 + mpq_class(1, 24);
    } else {
        out = x / 2 + x * x / 2 - mpq_class(23, 24) - s * (1 - x);
    }
    out.canonicalize();
    return out;
}

mpq_class delta_param(long a, long c, long k, long s, Sign sg) {
    return delta_param(sum_params(a, c, k), s, sg);
}

mpq_class delta0_of(long c) {
    mpz_class C(c);
    mpq_class out = mpq_class(1, 2 * C * C) - mpq_class(1, 2 * C) + mpq_class(1, 24);
    out.canonicalize();
    return out;
}

mpq_class m_param(const SumParams& p, long s, Sign sg) {
    if (s < 0) throw std::domain_error("s must be >= 0");
    long num = p.a * p.k1 - p.l;
    if (num % p.c1 != 0) throw consistency_error("a*k1 - l not divisible by c1");
    mpz_class t(num / p.c1);
    mpq_class out;
    if (sg == Sign::plus) {
        mpz_class top = -t * (t + 1);
        out = mpq_class(top, 2) - s * mpq_class(t);
    } else {
        mpz_class top = -t * (t + 2);
        out = mpq_class(top, 2) + s + 1 + s * mpq_class(t);
    }
    out.canonicalize();
    return out;
}

mpq_class m_param(long a, long c, long k, long s, Sign sg) {
    return m_param(sum_params(a, c, k), s, sg);
}

namespace {
// 2(nh + mh')/k as an exact rational (phase in units of pi)
mpq_class two_pi_term(long long n, long h, long long m, long hp, long k) {
    mpz_class nn(static_cast<long>(n)), mm(static_cast<long>(m));
    mpq_class r(2 * (nn * h + mm * hp), mpz_class(k));
    r.canonicalize();
    return r;
}
} // namespace

Complex b_tilde(long a, long c, long k, long long n, long long m, mpfr_prec_t prec,
                long rep_offset) {
    if (!(0 < a && a < c)) throw std::domain_error("need 0 < a < c");
    if (k < 1) throw std::domain_error("k must be >= 1");
    long k1 = k / std::gcd(c, k);
    long mod = (k % 2 == 1) ? k : 2 * k;

    Complex acc(prec);
    for (long h = 0; h < k; ++h) {
        if (k > 1 && std::gcd(h, k) != 1) continue;
        if (k == 1 && h != 0) continue;
        long hp = h_prime(h, k) + rep_offset * mod;

        // denominator sin(pi a h'/c); exact vanishing test first
        mpq_class dq(static_cast<long>(a) * hp, c);
        dq.canonicalize();
        if (dq.get_den() == 1)
            throw singularity_error("sin(pi a h'/c) = 0 at h = " + std::to_string(h) +
                                    ", k = " + std::to_string(k));
        Real den = sin_pi(dq, prec);

        // phase/pi = s(h,k) - a^2 k1 h'/c + 2(n h + m h')/k, exact
        mpq_class phase = dedekind_sum(h, k);
        phase -= mpq_class(mpz_class(a) * a * k1 * hp, mpz_class(c));
        phase += two_pi_term(n, h, m, hp, k);
        phase.canonicalize();

        Complex e = exp_i_pi(phase, prec);
        acc = c_add(acc, c_div_real(e, den));
    }

    int sgn = (static_cast<long long>(a) * k % 2 == 1) ? 1 : -1; // (-1)^{ak+1}
    Real pre = sin_pi(mpq_class(a, c), prec);
    if (sgn < 0) pre = r_neg(pre);
    return c_scale(acc, pre);
}

Complex d_sum(long a, long c, long k, long long n, long long m, mpfr_prec_t prec) {
    SumParams p = sum_params(a, c, k);

    Complex acc(prec);
    for (long h = 0; h < k; ++h) {
        if (k > 1 && std::gcd(h, k) != 1) continue;
        if (k == 1 && h != 0) continue;
        long hp = h_prime(h, k);

        mpq_class phase = dedekind_sum(h, k);
        phase += two_pi_term(n, h, m, hp, k);
        phase.canonicalize();
        acc = c_add(acc, exp_i_pi(phase, prec));
    }

    int sgn = ((static_cast<long long>(a) * k + p.l) % 2 == 1) ? -1 : 1; // (-1)^{ak+l}
    Real pre = sin_pi(mpq_class(a, c), prec);
    if (sgn < 0) pre = r_neg(pre);
    return c_scale(acc, pre);
}

} // namespace cranklab
