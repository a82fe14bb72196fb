#pragma once

#include <gmpxx.h>

#include "cranklab/hp.hpp"

namespace cranklab {

enum class Sign { plus, minus };

// ((x)) = x - floor(x) - 1/2 off integers, 0 at integers. Exact.
mpq_class sawtooth(const mpq_class& x);

// Dedekind sum s(h,k) = sum_{u mod k} ((u/k))((hu/k)).
// dedekind_sum walks the reciprocity identity
//   s(h,k) = -1/4 + (h^2 + k^2 + 1)/(12hk) - s(k mod h, h)
// and costs O(log k) rational operations; dedekind_sum_direct evaluates the
// defining sum with 64-bit integer arithmetic (numerator fits below k^3,
// guarded to k <= 2e6). They must agree exactly.
mpq_class dedekind_sum(long h, long k);
mpq_class dedekind_sum_direct(long h, long k);

// Least non-negative solution of h*h' == -1 (mod k) for odd k, (mod 2k) for
// even k. (0,1) -> 0.
long h_prime(long h, long k);

// omega_{h,k} = e^{pi i s(h,k)}, exponentiated from the exact rational.
Complex omega(long h, long k, mpfr_prec_t prec);

struct SumParams {
    long a = 0, c = 0, k = 0;
    long c1 = 0, k1 = 0, l = 0;
};

// c1 = c/gcd(c,k), k1 = k/gcd(c,k), l = minimal positive solution of
// l == a*k1 (mod c1); l = 1 when c1 = 1 (every integer qualifies).
SumParams sum_params(long a, long c, long k);

// delta^+ = -(1/2 + s)(l/c1) + (1/2)(l/c1)^2 + 1/24
// delta^- = l/(2 c1) + (1/2)(l/c1)^2 - 23/24 - s(1 - l/c1)
mpq_class delta_param(const SumParams& p, long s, Sign sg);
mpq_class delta_param(long a, long c, long k, long s, Sign sg);

// delta0(Q) = 1/(2Q^2) - 1/(2Q) + 1/24; every surviving delta is <= this
// when gcd(a,c)=1 and c does not divide k.
mpq_class delta0_of(long c);

// Fourier index of the second-sum kernel. With t = (a*k1 - l)/c1 (always an
// integer): m^+ = -t(t+1)/2 - s*t, m^- = -t(t+2)/2 + s + 1 + s*t. Returned
// as an exact rational; integrality is asserted at the point of consumption.
mpq_class m_param(const SumParams& p, long s, Sign sg);
mpq_class m_param(long a, long c, long k, long s, Sign sg);

// B~_{a,c,k}(n,m) = (-1)^{ak+1} sin(pi a/c) *
//   sum_{h mod k, (h,k)=1} omega_{h,k} e^{-pi i a^2 k1 h'/c} e^{2 pi i (nh + mh')/k}
//                          / sin(pi a h'/c)
// The phase is assembled as one exact rational, reduced mod 2, then
// exponentiated once per h. rep_offset shifts every h' by that many moduli;
// the sensitivity tests use it to probe representative dependence.
// Throws singularity_error when some sin(pi a h'/c) = 0.
Complex b_tilde(long a, long c, long k, long long n, long long m, mpfr_prec_t prec,
                long rep_offset = 0);

// D_{a,c,k}(n,m) = (-1)^{ak+l} sin(pi a/c) *
//   sum_{h mod k, (h,k)=1} omega_{h,k} e^{2 pi i (nh + mh')/k}
Complex d_sum(long a, long c, long k, long long n, long long m, mpfr_prec_t prec);

} // namespace cranklab
