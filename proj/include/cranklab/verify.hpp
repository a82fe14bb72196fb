#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "cranklab/hp.hpp"

namespace cranklab {

struct Margins {
    double min = 0, max = 0, median = 0;
};

// status is "fail" exactly when counterexamples is non-empty. margins hold
// the per-grid-point margin of whatever inequality the suite checks (0 for
// exact equality/set claims); notes carry descriptive observations that are
// not claims.
struct VerificationReport {
    std::string claim_id;
    std::string parameter_grid;
    std::string status;
    std::vector<std::string> counterexamples;
    std::vector<std::string> notes;
    Margins margins;

    bool passed() const { return status == "pass"; }
    std::string to_json() const;
};

VerificationReport make_report(std::string claim_id, std::string grid,
                               std::vector<std::string> counterexamples,
                               const std::vector<double>& margins,
                               std::vector<std::string> notes = {});

// |M(r,Q;n)/p(n) - 1/Q| <= deviation_bound(Q,n) for 2 <= n <= n_max, all r.
// Exact integer left side (|Q M - p| vs Q p bound with the bound rounded
// down), so a pass is rigorous. Margin per n: ln(bound side) - ln(max_r
// deviation), with deviation floored at 1.
VerificationReport verify_equidistribution(long Q, long n_max, mpfr_prec_t prec = 256,
                                           bool parallel = true);

// Minimal n0 with M(r,Q;n) > 0 for all r and all n0 <= n <= n_max, compared
// against the combinatorial thresholds (Q+1)/2 (odd Q >= 11) and Q/2 + 2
// (even Q >= 8); for odd Q < 11 checks positivity on [263, n_max] instead.
// Margin per n >= n0: log10(min_r M).
VerificationReport verify_positivity(long Q, long n_max);

// crank_value_set(n) = [-n,n] \ {-(n-1), n-1} for n_min <= n <= n_max
// (requires n_min >= 6), plus the explicit witness partitions.
VerificationReport verify_value_set(long n_min, long n_max, bool parallel = true);

// M(r,Q;a+b) < M(r,Q;a) M(r,Q;b) exactly on a_min <= a <= b <= a_max.
// Margin per (a,b): min_r ln(M(a)M(b)) - ln(M(a+b)).
VerificationReport verify_log_subadditivity(long Q, long a_min, long a_max,
                                            bool parallel = true);

// M(r,5;5l+4) = p(5l+4)/5, M(r,7;7l+5) = p(7l+5)/7, M(r,11;11l+6) =
// p(11l+6)/11 for all r and 0 <= l <= l_max, plus the p-divisibilities.
VerificationReport verify_ramanujan_congruences(long l_max);

// Coefficient identities of the error budget (59071 + 113883 = 172954,
// 330.9+930.05+1059+22306+1965 = 26590.95 <= 26591, the 10^5(40.93Q+6.292)
// expansion), six-piece total <= merged on a sample grid, and the
// elementary inequality suite over odd Q in [3, 101].
VerificationReport verify_error_budget_identities();

// The threshold constant (1.93e59)(40.93Q^2+6.292Q)^8 /
// (pi - pi sqrt(1+12(1/Q^2-1/Q)))^24 + 1 for odd Q >= 11.
Real compute_C_Q(long Q, mpfr_prec_t prec);
// Independent evaluation through logs (different operation sequence), for
// cross-checking compute_C_Q.
Real compute_C_Q_alt(long Q, mpfr_prec_t prec);
mpz_class ceil_C_Q(long Q, mpfr_prec_t prec = 512);

// T_a(C) = (pi/6)(mu(a) + mu(Ca) - mu(a+Ca))
// S_a(C) = (1 + 1/sqrt(a+Ca)) / ((1-1/sqrt(a))(1-1/sqrt(Ca)))
// V_a(C) = (1.10213e7)/(0.00306)^2 * 4 sqrt(3) Ca/(C+1)
// W_a(C) = 6Q * 4 sqrt(3) Ca/(C+1)
struct SufficiencyValues {
    Real T, S, V, W;
};
SufficiencyValues sufficiency_functions(long a, const mpq_class& C, long Q,
                                        mpfr_prec_t prec);

// The subadditivity sufficiency inequality T_a(1) > log(sup_C V_a(C)) +
// log(S_a(1)) probed at one a, with the margin under both readings of log.
// (Under natural log it first holds near a ~ 585; under base 10 from
// a ~ 103. The probe records both margins rather than asserting either; the
// sufficiency chain only evaluates the inequality at a >= (432 Q)^2, far
// beyond both crossovers.)
struct TsvProbe {
    double margin_ln = 0;
    double margin_log10 = 0;
};
TsvProbe tsv_probe(long a, mpfr_prec_t prec = 256);

// The Q >= 11 chain at sampled a >= (432 Q)^2:
//   T_a(1) > ln(24 sqrt(3) Q a) + ln S_a(1)            (first link)
//   ln(24 sqrt(3) Q a) + ln S_a(1) < ln(432 Q a)       (S_a(1) < 6 sqrt(3))
//   (pi/6)(16a-1)/sqrt(48a-1) > 2 ln a                 (closed form)
//   a >= (432 Q)^2, exactly in integers                (2 ln a >= ln a + 2 ln 432Q)
//   T_a(1) > (pi/6)(16a-1)/sqrt(48a-1)                 (closed form is a strict
//                                                       lower bound, not an identity)
// Default samples: (432Q)^2, 10(432Q)^2, 10^8.
VerificationReport verify_q11_sufficiency_chain(long Q, std::vector<long> a_samples = {},
                                                mpfr_prec_t prec = 256);

} // namespace cranklab
