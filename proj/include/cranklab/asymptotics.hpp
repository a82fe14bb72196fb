#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cranklab/hp.hpp"

namespace cranklab {

// mu(n) = sqrt(24n - 1), the argument scale of all the exponentials.
Real mu_of(long n, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);
Real mu_of(const mpz_class& n, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN);

// Working precision for main-term evaluation: at least
// pi*mu(n)/(6 ln 2) + 96 guard bits, never below the requested precision.
mpfr_prec_t working_precision(long n, mpfr_prec_t requested);

// Two-sided envelope sqrt(3)/(12n) (1 -+ 1/sqrt(n)) e^{pi mu(n)/6} for p(n).
// lower is rounded up and upper rounded down, so a strict bracket check
// against exact p(n) is conservative.
struct LehmerBounds {
    Real lower, upper;
};
LehmerBounds lehmer_bounds(long n, mpfr_prec_t prec);

// First-order Hardy-Ramanujan size: e^{pi sqrt(2n/3)} / (4 n sqrt(3)).
Real hardy_ramanujan_estimate(long n, mpfr_prec_t prec);

// The six error pieces of the circle-method estimate, each rounded up:
//   |S_err|   <= 330.9 n^{1/4}        |T_err|    <= (59071 Q + 930.05) n^{1/4}
//   |S_1err|  <= 1059 n^{1/4}         |S_2err|   <= 22306 n^{1/4}
//   |Sig1I_err| <= 1965 n^{3/8}       |Sig2I_err| <= 113883 Q
// total is their sum; merged is the headline (172954 Q + 26591) n^{3/8},
// which dominates total for every n >= 1.
struct ErrorBudget {
    Real s_err, t_err, s1_err, s2_err, sigma1_i_err, sigma2_i_err;
    Real total;
    Real merged;
};
ErrorBudget error_budget(long Q, long n, mpfr_prec_t prec);

// |M(r,Q;n)/p(n) - 1/Q| <= 10^5 (40.93 Q + 6.292) e^{-x pi mu(n)/6} n^{11/8}
// with decay rate x = 1 - 1/Q for Q < 11 and
// x = 1 - sqrt(1 + 12(1/Q^2 - 1/Q)) for Q >= 11 (the branches agree at 11).
// dir = MPFR_RNDD gives a conservative (smaller) bound for checking
// deviations against it; MPFR_RNDU a conservative larger one.
Real deviation_bound(long Q, long n, mpfr_prec_t prec, mpfr_rnd_t dir = MPFR_RNDN);

// Natural log of the same bound; usable far beyond the exponent range of
// linear-space floats (needed at n ~ 10^78).
Real deviation_bound_log(long Q, const mpz_class& n, mpfr_prec_t prec,
                        mpfr_rnd_t dir = MPFR_RNDN);

// Sharper three-piece deviation bound:
//   20.79 e^{(1/Q-1) pi mu/6} n^{5/4}
//   + (4.553 Q + 81.96) e^{(sqrt(24 delta0)-1) pi mu/6} n^{5/4}   (Q >= 11 only;
//     delta0 < 0 for odd Q <= 9 makes the middle term meaningless there)
//   + 10^5 (40.93 Q + 6.292) e^{-pi mu/6} n^{11/8}
Real refined_three_term_bound(long Q, long n, mpfr_prec_t prec);

// Per-j inner sums of the two circle-method main terms, before the
// root-of-unity filter. Index j-1 for j = 1..Q-1. Each j is evaluated on the
// reduced fraction a/c = j/Q in lowest terms (the sums are functions of j/Q;
// composite Q literally plugged in produces vanishing kernel denominators).
//   sum1[j] = (4 sqrt(3) i / mu) sum_{c|k<=sqrt(n)} B~_{a,c,k}(-n,0)/sqrt(k)
//             * sinh(pi mu / (6k))
//   sum2[j] = (8 sqrt(3) / mu) sum_{k<=sqrt(n), c not| k} sum_{s in [0,c)}
//             sum_{sign: delta>0} D_{a,c,k}(-n,m)/sqrt(k)
//             * sinh(sqrt(24 delta) pi mu / (6k))
// Evaluation order is fixed (ascending j, then k, then s, + before -), and
// the parallel path buffers per-term results and reduces in that order, so
// serial and parallel results are bit-identical.
struct MainTermParts {
    long Q = 0, n = 0;
    mpfr_prec_t prec = 0;
    std::vector<Complex> sum1, sum2;
};
MainTermParts main_term_parts(long Q, long n, mpfr_prec_t prec, bool parallel = true);

// (1/Q) sum_{j=1}^{Q-1} zeta_Q^{-rj} * sum{which}[j]
Complex assemble_main_term(const MainTermParts& parts, long r, int which);

Complex main_term_1(long r, long Q, long n, mpfr_prec_t prec);
Complex main_term_2(long r, long Q, long n, mpfr_prec_t prec);

struct EstimateBreakdown {
    long r = 0, Q = 0, n = 0;
    mpfr_prec_t precision_bits = 0;
    Real p_over_q;   // p(n)/Q with exact pentagonal p(n)
    Real main1;      // real part of the assembled first main term
    Real main2;      // real part of the assembled second main term
    Real imag_residue; // |imaginary part| discarded from main1+main2
    Real total;      // p_over_q + main1 + main2
    ErrorBudget budget;
};

// The circle-method estimate of M(r,Q;n). Throws consistency_error if the
// discarded imaginary part exceeds realness_tol relative to max(1,|total|).
EstimateBreakdown estimate_M(long r, long Q, long n, mpfr_prec_t prec,
                             double realness_tol = 1e-6);

// Shared-parts variant for sweeps over r.
EstimateBreakdown estimate_from_parts(const MainTermParts& parts, long r,
                                      const mpz_class& p_n, double realness_tol = 1e-6);

// JSON with decimal-string fields p_over_Q, main1, main2, error_bound,
// total, imag_residue and integer precision_bits; exact/residual included
// when the exact count is supplied.
std::string estimate_json(const EstimateBreakdown& e, const mpz_class* exact = nullptr);

// The handful of closed-form inequalities used by the error analysis,
// each evaluated with outward rounding (lhs up, rhs down).
struct BoundCheck {
    std::string name;
    double lhs = 0, rhs = 0;
    bool ok = false;
};
std::vector<BoundCheck> elementary_bounds_check(long Q, mpfr_prec_t prec = 192);

} // namespace cranklab
