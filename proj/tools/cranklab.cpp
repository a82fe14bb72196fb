// cranklab: exact crank tables, circle-method estimates, and claim verifiers
// for the partition crank statistic, in one command-line tool.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cranklab/asymptotics.hpp"
#include "cranklab/errors.hpp"
#include "cranklab/partition.hpp"
#include "cranklab/verify.hpp"

namespace {

struct Config {
    long precision_bits = 256;
    long n_cap_enumeration = 45;
    long n_cap_dense = 500;
    long n_cap_residue = 5000;
    double realness_tolerance = 1e-6;
    std::string output_path; // empty means stdout
    std::string format = "csv";
};

void check_config(const Config& cfg) {
    if (cfg.precision_bits < 64)
        throw std::domain_error("precision must be at least 64 bits");
    if (cfg.n_cap_enumeration <= 0 || cfg.n_cap_dense <= 0 || cfg.n_cap_residue <= 0)
        throw std::domain_error("table caps must be positive");
    if (cfg.realness_tolerance <= 0)
        throw std::domain_error("realness tolerance must be positive");
}

void emit(const Config& cfg, const std::string& text) {
    std::string out = text;
    if (out.empty() || out.back() != '\n') out += '\n';
    if (cfg.output_path.empty()) {
        std::cout << out;
    } else {
        std::ofstream f(cfg.output_path, std::ios::binary);
        if (!f) throw std::domain_error("cannot open output path: " + cfg.output_path);
        f << out;
    }
}

int cmd_stat(const Config& cfg, const std::vector<long>& parts) {
    cranklab::PartitionStats st = cranklab::partition_stats(parts);
    std::ostringstream os;
    os << "n: " << st.n << "\n"
       << "largest: " << st.largest << "\n"
       << "length: " << st.length << "\n"
       << "ones: " << st.ones << "\n"
       << "big_parts: " << st.big_parts << "\n"
       << "crank: " << st.crank << "\n"
       << "rank: " << st.rank;
    emit(cfg, os.str());
    return 0;
}

int cmd_table(const Config& cfg, long Q, long n_max) {
    if (Q < 2) throw std::domain_error("table requires Q >= 2");
    if (n_max < 0) throw std::domain_error("table requires n_max >= 0");
    if (n_max > cfg.n_cap_residue)
        throw std::domain_error(
            "n_max exceeds the residue-table cap; raise it with --n-cap-residue "
            "or CRANKLAB_N_CAP_RESIDUE");

    cranklab::ResidueTable t = cranklab::build_residue_table(Q, n_max, cfg.n_cap_residue);
    if (cfg.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (long n = 0; n <= n_max; ++n)
            for (long r = 0; r < Q; ++r)
                arr.push_back({{"n", n}, {"r", r}, {"count", t.count(r, n).get_str()}});
        emit(cfg, arr.dump(2));
    } else {
        std::ostringstream os;
        cranklab::write_residue_csv(os, t);
        emit(cfg, os.str());
    }
    return 0;
}

int cmd_estimate(const Config& cfg, long r, long Q, long n) {
    if (Q < 3 || Q % 2 == 0)
        throw std::domain_error("estimate requires odd Q >= 3");
    if (n < 2) throw std::domain_error("estimate requires n >= 2");

    cranklab::EstimateBreakdown e = cranklab::estimate_M(
        r, Q, n, static_cast<mpfr_prec_t>(cfg.precision_bits), cfg.realness_tolerance);

    // When the exact table is affordable, include it so the output shows the
    // estimate next to the truth it approximates.
    if (n <= cfg.n_cap_residue) {
        cranklab::ResidueTable t = cranklab::build_residue_table(Q, n, cfg.n_cap_residue);
        mpz_class exact = t.count(r, n);
        emit(cfg, cranklab::estimate_json(e, &exact));
    } else {
        emit(cfg, cranklab::estimate_json(e));
    }
    return 0;
}

int cmd_verify(const Config& cfg, const std::string& suite, long Q, long n_max,
               long n_min, long a_min, long a_max, long l_max) {
    // Per-suite defaults for anything the caller left unset.
    if (Q < 0) Q = (suite == "positivity" || suite == "sufficiency") ? 11 : 5;
    if (n_max < 0) {
        if (suite == "equidistribution") n_max = 200;
        else if (suite == "positivity") n_max = 60;
        else n_max = 30;
    }

    cranklab::VerificationReport rep;
    if (suite == "equidistribution") {
        rep = cranklab::verify_equidistribution(
            Q, n_max, static_cast<mpfr_prec_t>(cfg.precision_bits));
    } else if (suite == "positivity") {
        rep = cranklab::verify_positivity(Q, n_max);
    } else if (suite == "value-set") {
        rep = cranklab::verify_value_set(n_min, n_max);
    } else if (suite == "subadditivity") {
        rep = cranklab::verify_log_subadditivity(Q, a_min, a_max);
    } else if (suite == "congruences") {
        rep = cranklab::verify_ramanujan_congruences(l_max);
    } else if (suite == "budget") {
        rep = cranklab::verify_error_budget_identities();
    } else if (suite == "sufficiency") {
        rep = cranklab::verify_q11_sufficiency_chain(
            Q, {}, static_cast<mpfr_prec_t>(cfg.precision_bits));
    } else {
        throw std::domain_error("unknown verification suite: " + suite);
    }

    emit(cfg, rep.to_json());
    return rep.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and asymptotic statistics of the partition crank"};
    app.fallthrough();
    app.require_subcommand(1);

    Config cfg;
    app.add_option("--precision", cfg.precision_bits,
                   "working precision in bits (>= 64)")
        ->envname("CRANKLAB_PRECISION");
    app.add_option("--out", cfg.output_path, "write output to this file instead of stdout")
        ->envname("CRANKLAB_OUT");
    app.add_option("--format", cfg.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("CRANKLAB_FORMAT");
    app.add_option("--n-cap-enumeration", cfg.n_cap_enumeration,
                   "largest n for full partition enumeration")
        ->envname("CRANKLAB_N_CAP_ENUMERATION");
    app.add_option("--n-cap-dense", cfg.n_cap_dense, "largest n for dense crank tables")
        ->envname("CRANKLAB_N_CAP_DENSE");
    app.add_option("--n-cap-residue", cfg.n_cap_residue,
                   "largest n for residue-class tables")
        ->envname("CRANKLAB_N_CAP_RESIDUE");
    app.add_option("--realness-tolerance", cfg.realness_tolerance,
                   "relative imaginary-part tolerance for estimates")
        ->envname("CRANKLAB_REALNESS_TOL");

    auto* stat = app.add_subcommand("stat", "crank and rank of a single partition");
    std::vector<long> parts;
    stat->add_option("parts", parts, "parts of the partition (positive integers)")
        ->required();

    auto* table = app.add_subcommand("table", "exact crank residue counts M(r,Q;n)");
    long table_q = 0, table_n_max = 0;
    table->add_option("--Q", table_q, "modulus")->required();
    table->add_option("--n-max", table_n_max, "largest n")->required();

    auto* estimate =
        app.add_subcommand("estimate", "circle-method estimate of M(r,Q;n)");
    long est_r = 0, est_q = 0, est_n = 0;
    estimate->add_option("--r", est_r, "crank residue");
    estimate->add_option("--Q", est_q, "modulus (odd, >= 3)")->required();
    estimate->add_option("--n", est_n, "partition size")->required();

    auto* verify = app.add_subcommand("verify", "machine-check one claim suite");
    std::string suite;
    long v_q = -1, v_n_max = -1, v_n_min = 6, v_a_min = 396, v_a_max = 600, v_l_max = 20;
    verify
        ->add_option("suite", suite,
                     "one of: equidistribution, positivity, value-set, subadditivity, "
                     "congruences, budget, sufficiency")
        ->required()
        ->check(CLI::IsMember({"equidistribution", "positivity", "value-set",
                               "subadditivity", "congruences", "budget",
                               "sufficiency"}));
    verify->add_option("--Q", v_q, "modulus");
    verify->add_option("--n-max", v_n_max, "largest n");
    verify->add_option("--n-min", v_n_min, "smallest n (value-set suite)");
    verify->add_option("--a-min", v_a_min, "smallest summand (subadditivity suite)");
    verify->add_option("--a-max", v_a_max, "largest summand (subadditivity suite)");
    verify->add_option("--l-max", v_l_max, "largest l (congruences suite)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        check_config(cfg);
        if (stat->parsed()) return cmd_stat(cfg, parts);
        if (table->parsed()) return cmd_table(cfg, table_q, table_n_max);
        if (estimate->parsed()) return cmd_estimate(cfg, est_r, est_q, est_n);
        if (verify->parsed())
            return cmd_verify(cfg, suite, v_q, v_n_max, v_n_min, v_a_min, v_a_max,
                              v_l_max);
    } catch (const cranklab::capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
