#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cranklab/asymptotics.hpp"
#include "cranklab/errors.hpp"
#include "cranklab/partition.hpp"
#include "json.hpp"

using namespace cranklab;

namespace {

double to_d(const Real& r) { return r.to_double(); }

bool real_is_zero(const Real& r) { return mpfr_zero_p(r.raw()) != 0; }

// bound * (Q * p), rounded down: the scaled right side of the deviation check
bool deviation_within(const mpz_class& exact, const mpz_class& p_n, long Q,
                      const Real& bound) {
    mpz_class dev = Q * exact - p_n;
    if (dev < 0) dev = -dev;
    mpz_class scaled = p_n * Q;
    Real rhs = r_mul(Real::of(scaled, 256, MPFR_RNDD), bound, MPFR_RNDD);
    return mpfr_cmp_z(rhs.raw(), dev.get_mpz_t()) >= 0;
}

} // namespace

TEST_CASE("mu and working precision") {
    CHECK(to_d(mu_of(1L, 128)) == doctest::Approx(std::sqrt(23.0)).epsilon(1e-14));
    CHECK(to_d(mu_of(5000L, 128)) == doctest::Approx(std::sqrt(119999.0)).epsilon(1e-14));
    CHECK(to_d(mu_of(mpz_class(5000), 128)) == to_d(mu_of(5000L, 128)));
    CHECK_THROWS_AS(mu_of(0L, 128), std::domain_error);

    CHECK(working_precision(500, 256) >= 256);
    CHECK(working_precision(100000, 256) > 1100);
    CHECK(working_precision(100000, 256) >= working_precision(1000, 256));
}

TEST_CASE("lehmer envelope strictly brackets p(n)") {
    std::vector<mpz_class> p = partition_counts(5000);
    auto check_n = [&](long n) {
        LehmerBounds lb = lehmer_bounds(n, 256);
        const mpz_class& pn = p[static_cast<size_t>(n)];
        CHECK(mpfr_cmp_z(lb.lower.raw(), pn.get_mpz_t()) < 0);
        CHECK(mpfr_cmp_z(lb.upper.raw(), pn.get_mpz_t()) > 0);
    };
    for (long n = 2; n <= 120; ++n) check_n(n);
    for (long n : {371L, 500L, 1000L, 2000L, 3333L, 5000L}) check_n(n);
}

TEST_CASE("hardy-ramanujan first-order size") {
    std::vector<mpz_class> p = partition_counts(5000);
    Real est = hardy_ramanujan_estimate(5000, 256);
    double ratio = to_d(r_div(est, Real::of(p[5000], 256)));
    CHECK(ratio > 0.95);
    CHECK(ratio < 1.05);
    // the relative error shrinks with n
    Real est100 = hardy_ramanujan_estimate(100, 256);
    double ratio100 = to_d(r_div(est100, Real::of(p[100], 256)));
    CHECK(std::abs(ratio - 1.0) < std::abs(ratio100 - 1.0));
}

TEST_CASE("error budget: six pieces, total, merged envelope") {
    ErrorBudget b = error_budget(5, 1000, 192);
    for (const Real* piece : {&b.s_err, &b.t_err, &b.s1_err, &b.s2_err,
                              &b.sigma1_i_err, &b.sigma2_i_err})
        CHECK(piece->sign() > 0);
    // the total dominates each piece and never exceeds the merged form
    for (const Real* piece : {&b.s_err, &b.t_err, &b.s1_err, &b.s2_err,
                              &b.sigma1_i_err, &b.sigma2_i_err})
        CHECK(*piece <= b.total);
    for (long Q : {3L, 5L, 9L, 11L, 41L, 101L})
        for (long n : {1L, 2L, 7L, 100L, 1000L, 5000L}) {
            ErrorBudget e = error_budget(Q, n, 192);
            CHECK(e.total <= e.merged);
        }
    // independent double-arithmetic cross-check of the merged form
    double merged = (172954.0 * 5 + 26591.0) * std::pow(1000.0, 0.375);
    CHECK(to_d(b.merged) == doctest::Approx(merged).epsilon(1e-12));
}

TEST_CASE("deviation bound: values, branches, rounding directions") {
    // independent double-precision recomputation, Q < 11 branch
    {
        double mu = std::sqrt(24.0 * 300 - 1);
        double expect = (4093000.0 * 3 + 629200.0) *
                        std::exp(-(2.0 / 3.0) * M_PI * mu / 6.0) *
                        std::pow(300.0, 11.0 / 8.0);
        CHECK(to_d(deviation_bound(3, 300, 256)) == doctest::Approx(expect).epsilon(1e-10));
    }
    // Q >= 11 branch
    {
        double mu = std::sqrt(24.0 * 500 - 1);
        double x = 1.0 - std::sqrt(1.0 + 12.0 * (1.0 / 169 - 1.0 / 13));
        double expect = (4093000.0 * 13 + 629200.0) *
                        std::exp(-x * M_PI * mu / 6.0) * std::pow(500.0, 11.0 / 8.0);
        CHECK(to_d(deviation_bound(13, 500, 256)) == doctest::Approx(expect).epsilon(1e-10));
    }
    // at Q = 11 the two branch exponents coincide: 1+12(1/121-1/11) = 1/121,
    // whose square root is 1/11, giving x = 10/11 = (Q-1)/Q exactly
    {
        mpq_class radicand = 1 + 12 * (mpq_class(1, 121) - mpq_class(1, 11));
        radicand.canonicalize();
        CHECK(radicand == mpq_class(1, 121));
        double mu = std::sqrt(24.0 * 700 - 1);
        double expect = (4093000.0 * 11 + 629200.0) *
                        std::exp(-(10.0 / 11.0) * M_PI * mu / 6.0) *
                        std::pow(700.0, 11.0 / 8.0);
        CHECK(to_d(deviation_bound(11, 700, 256)) == doctest::Approx(expect).epsilon(1e-10));
    }
    // directed rounding orders the three evaluations
    for (long n : {10L, 137L, 2000L}) {
        Real dn = deviation_bound(7, n, 128, MPFR_RNDD);
        Real nr = deviation_bound(7, n, 128, MPFR_RNDN);
        Real up = deviation_bound(7, n, 128, MPFR_RNDU);
        CHECK(dn <= nr);
        CHECK(nr <= up);
        CHECK(dn.sign() > 0);
    }
    // non-vacuous by n ~ 300 for Q=3 (below 1/Q) and n ~ 1000 for Q=13
    CHECK(deviation_bound(3, 300, 256) < Real::of(mpq_class(1, 3), 256));
    CHECK(deviation_bound(13, 1000, 256) < Real::of(mpq_class(1, 26), 256));
    CHECK_THROWS_AS(deviation_bound(4, 100, 128), std::domain_error);
    CHECK_THROWS_AS(deviation_bound(3, 0, 128), std::domain_error);
}

TEST_CASE("log-space bound matches the linear bound in range") {
    for (long Q : {3L, 11L})
        for (long n : {50L, 800L}) {
            Real lin = r_log(deviation_bound(Q, n, 320));
            Real lg = deviation_bound_log(Q, mpz_class(n), 320);
            CHECK(to_d(r_abs(r_sub(lin, lg))) < 1e-25);
        }
    // far beyond linear range: finite and enormously negative
    mpz_class huge("1" + std::string(78, '0'));
    Real lg = deviation_bound_log(11, huge, 256);
    CHECK(lg.is_finite());
    CHECK(to_d(lg) < -1e38);
}

TEST_CASE("refined three-term bound never exceeds the plain bound") {
    for (long Q : {3L, 11L, 13L})
        for (long n : {50L, 300L, 2000L})
            CHECK(refined_three_term_bound(Q, n, 256) <= deviation_bound(Q, n, 256));
}

TEST_CASE("second main term vanishes identically for Q < 11") {
    for (long Q : {3L, 5L, 7L, 9L}) {
        MainTermParts parts = main_term_parts(Q, 100, 192);
        for (const Complex& s2 : parts.sum2) {
            CHECK(real_is_zero(s2.re));
            CHECK(real_is_zero(s2.im));
        }
    }
    // and is genuinely present for Q = 11
    MainTermParts parts11 = main_term_parts(11, 500, 256);
    double total2 = 0;
    for (const Complex& s2 : parts11.sum2) total2 += to_d(c_abs(s2));
    CHECK(total2 > 1e-3);
}

TEST_CASE("estimates land within the error budget of the exact counts") {
    struct Grid {
        long Q, n;
    } grid[] = {{3, 500}, {5, 1000}, {9, 500}, {11, 500}, {13, 300}};
    for (const Grid& g : grid) {
        ResidueTable table = build_residue_table(g.Q, g.n);
        std::vector<mpz_class> p = partition_counts(g.n);
        MainTermParts parts = main_term_parts(g.Q, g.n, 256);
        ErrorBudget budget = error_budget(g.Q, g.n, 256);
        for (long r = 0; r < g.Q; ++r) {
            EstimateBreakdown e =
                estimate_from_parts(parts, r, p[static_cast<size_t>(g.n)]);
            Real residual =
                r_abs(r_sub(Real::of(table.count(r, g.n), 256), e.total));
            CHECK(residual <= budget.total);
            // empirically the estimate is far sharper than the budget
            CHECK(to_d(residual) < 1.0);
        }
    }
}

TEST_CASE("per-j inner sums match the exact fourier transform of the row") {
    // A~(j/Q;n) = sum_r M(r,Q;n) e^{2 pi i j r / Q} exactly; the per-j
    // estimate must reproduce it within the sum of the per-residue
    // residuals (triangle inequality through the inverse filter).
    const long Q = 9, n = 300;
    ResidueTable table = build_residue_table(Q, n);
    std::vector<mpz_class> p = partition_counts(n);
    MainTermParts parts = main_term_parts(Q, n, 256);

    double residual_sum = 0;
    for (long r = 0; r < Q; ++r) {
        EstimateBreakdown e = estimate_from_parts(parts, r, p[n]);
        residual_sum +=
            std::abs(to_d(r_sub(Real::of(table.count(r, n), 256), e.total)));
    }

    for (long j = 1; j < Q; ++j) {
        Complex exact(256);
        for (long r = 0; r < Q; ++r) {
            mpq_class ang(2 * j * r, Q);
            ang.canonicalize();
            exact = c_add(exact, c_scale(exp_i_pi(ang, 256),
                                         Real::of(table.count(r, n), 256)));
        }
        Complex est = c_add(parts.sum1[static_cast<size_t>(j - 1)],
                            parts.sum2[static_cast<size_t>(j - 1)]);
        // remove the exact p(n) contribution of the j=0 term: A~ here is the
        // full transform, the parts exclude p(n)/Q; transform row minus p(n)
        // identity: sum_j-terms = A~(j) directly
        CHECK(to_d(c_abs(c_sub(exact, est))) <= residual_sum + 1e-9);
    }
}

TEST_CASE("residue estimates telescope to p(n) over a full period") {
    const long Q = 7, n = 400;
    std::vector<mpz_class> p = partition_counts(n);
    MainTermParts parts = main_term_parts(Q, n, 256);
    Real acc(256);
    for (long r = 0; r < Q; ++r)
        acc = r_add(acc, estimate_from_parts(parts, r, p[n]).total);
    Real rel = r_abs(r_div(r_sub(acc, Real::of(p[n], 256)), Real::of(p[n], 256)));
    CHECK(to_d(rel) < 1e-40);
}

TEST_CASE("doubling the precision moves the estimate by less than 2^-64") {
    EstimateBreakdown lo = estimate_M(0, 5, 300, 256);
    EstimateBreakdown hi = estimate_M(0, 5, 300, 512);
    Real diff = r_abs(r_sub(lo.total, hi.total));
    Real scale = r_abs(hi.total);
    CHECK(to_d(r_div(diff, scale)) < std::ldexp(1.0, -64));
}

TEST_CASE("parallel and serial evaluation are bit-identical") {
    MainTermParts par = main_term_parts(5, 500, 256, true);
    MainTermParts ser = main_term_parts(5, 500, 256, false);
    REQUIRE(par.sum1.size() == ser.sum1.size());
    for (size_t j = 0; j < par.sum1.size(); ++j) {
        CHECK(mpfr_equal_p(par.sum1[j].re.raw(), ser.sum1[j].re.raw()));
        CHECK(mpfr_equal_p(par.sum1[j].im.raw(), ser.sum1[j].im.raw()));
        CHECK(mpfr_equal_p(par.sum2[j].re.raw(), ser.sum2[j].re.raw()));
        CHECK(mpfr_equal_p(par.sum2[j].im.raw(), ser.sum2[j].im.raw()));
    }
}

TEST_CASE("estimate breakdown invariants and json export") {
    EstimateBreakdown e = estimate_M(2, 5, 400, 256);
    // total = p/Q + main1 + main2 by construction
    Real sum = r_add(r_add(e.p_over_q, e.main1), e.main2);
    CHECK(mpfr_equal_p(sum.raw(), e.total.raw()));
    CHECK(to_d(e.imag_residue) < 1e-6);
    CHECK(e.precision_bits >= 256);

    mpz_class exact(12345);
    auto j = nlohmann::json::parse(estimate_json(e, &exact));
    for (const char* key : {"p_over_Q", "main1", "main2", "error_bound", "total",
                            "imag_residue", "exact", "residual"})
        CHECK(j.at(key).is_string());
    CHECK(j.at("Q") == 5);
    CHECK(j.at("r") == 2);
    CHECK(j.at("n") == 400);
    CHECK(j.at("precision_bits").is_number());
    CHECK(j.at("total").get<std::string>().find('e') != std::string::npos);

    auto j2 = nlohmann::json::parse(estimate_json(e));
    CHECK(!j2.contains("exact"));
    CHECK(!j2.contains("residual"));
}

TEST_CASE("estimate guards") {
    CHECK_THROWS_AS(estimate_M(0, 4, 100, 256), std::domain_error);
    CHECK_THROWS_AS(estimate_M(0, 5, 1, 256), std::domain_error);
    CHECK_THROWS_AS(main_term_parts(2, 100, 128), std::domain_error);
}

TEST_CASE("scaled deviation check against exact tables at spot points") {
    // the full sweep lives in the acceptance harness; these are smoke points
    std::vector<mpz_class> p = partition_counts(600);
    for (long Q : {3L, 5L}) {
        ResidueTable t = build_residue_table(Q, 600);
        Real bound = deviation_bound(Q, 600, 256, MPFR_RNDD);
        for (long r = 0; r < Q; ++r)
            CHECK(deviation_within(t.count(r, 600), p[600], Q, bound));
    }
}

TEST_CASE("elementary inequality suite") {
    for (long Q : {3L, 101L}) {
        std::vector<BoundCheck> checks = elementary_bounds_check(Q);
        CHECK(checks.size() == 6);
        for (const BoundCheck& c : checks) {
            CAPTURE(c.name);
            CHECK(c.ok);
            CHECK(c.lhs <= c.rhs);
        }
    }
    CHECK_THROWS_AS(elementary_bounds_check(4), std::domain_error);
}
