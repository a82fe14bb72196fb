#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
    int code = -1;
    std::string out;
};

// Run a full shell command, capturing stdout and the exit code. stderr is
// dropped so expected-failure diagnostics do not pollute the test log.
RunResult run_raw(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

RunResult run(const std::string& args) {
    return run_raw(std::string(CRANKLAB_BIN) + " " + args);
}

size_t count_lines(const std::string& s) {
    size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("stat reports the hand-checkable statistics") {
    RunResult r = run("stat 5 2 2 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("n: 10") != std::string::npos);
    CHECK(r.out.find("crank: 2") != std::string::npos);
    CHECK(r.out.find("rank: 1") != std::string::npos);

    RunResult one = run("stat 1");
    CHECK(one.code == 0);
    CHECK(one.out.find("crank: -1") != std::string::npos);

    CHECK(run("stat 0 2").code == 2);     // parts must be positive
    CHECK(run("stat").code == 2);         // parts are required
    CHECK(run("").code == 2);             // a subcommand is required
    CHECK(run("frobnicate").code == 2);   // unknown subcommand
    CHECK(run("--help").code == 0);
}

TEST_CASE("table emits the full residue grid as csv") {
    RunResult r = run("table --Q 5 --n-max 100");
    CHECK(r.code == 0);
    CHECK(count_lines(r.out) == 506); // header + 101 * 5 rows
    CHECK(r.out.rfind("n,r,count\n", 0) == 0);
    // n = 4 is the first Ramanujan case: every residue class holds exactly
    // p(4)/5 = 1 partition
    CHECK(r.out.find("\n4,0,1\n4,1,1\n4,2,1\n4,3,1\n4,4,1\n") != std::string::npos);

    CHECK(run("table --Q 1 --n-max 10").code == 2);
    CHECK(run("table --Q 5 --n-max 20 --n-cap-residue 10").code == 2);
    CHECK(run("table --Q 5 --n-max 10 --n-cap-residue 10").code == 0);
}

TEST_CASE("table --format json holds the same counts as the csv") {
    RunResult r = run("table --Q 3 --n-max 2 --format json");
    CHECK(r.code == 0);
    auto arr = nlohmann::json::parse(r.out);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 9);
    CHECK(arr[0]["n"] == 0);
    CHECK(arr[0]["r"] == 0);
    CHECK(arr[0]["count"] == "1");
    // partitions of 2: {2} has crank 2, {1,1} has crank -2 = 1 (mod 3)
    CHECK(arr[6]["count"] == "0");
    CHECK(arr[7]["count"] == "1");
    CHECK(arr[8]["count"] == "1");
}

TEST_CASE("estimate pairs the asymptotic value with the exact count") {
    RunResult r = run("estimate --Q 5 --n 100 --r 2");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["Q"] == 5);
    CHECK(j["r"] == 2);
    CHECK(j["n"] == 100);
    CHECK(j["exact"] == "38113855");
    CHECK(std::abs(std::stod(j["residual"].get<std::string>())) < 1.0);

    // beyond the exact-table cap only the estimate is reported
    RunResult big = run("estimate --Q 3 --n 10000 --r 0");
    CHECK(big.code == 0);
    auto jb = nlohmann::json::parse(big.out);
    CHECK(!jb.contains("exact"));
    CHECK(!jb.contains("residual"));
    CHECK(jb.contains("total"));

    CHECK(run("estimate --Q 4 --n 100").code == 2);
    CHECK(run("estimate --Q 5 --n 1").code == 2);
}

TEST_CASE("verify runs a suite and reflects its status in the exit code") {
    RunResult r = run("verify congruences --l-max 8");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "pass");
    CHECK(j["claim_id"] == "ramanujan-congruences");

    RunResult pos = run("verify positivity --Q 8 --n-max 30");
    CHECK(pos.code == 0);
    CHECK(nlohmann::json::parse(pos.out)["status"] == "pass");

    CHECK(run("verify value-set --n-min 5").code == 2);
    CHECK(run("verify no-such-suite").code == 2);
}

TEST_CASE("repeat runs are byte-identical") {
    RunResult a = run("table --Q 7 --n-max 50");
    RunResult b = run("table --Q 7 --n-max 50");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    RunResult c = run("estimate --Q 3 --n 300 --r 1");
    RunResult d = run("estimate --Q 3 --n 300 --r 1");
    CHECK(c.code == 0);
    CHECK(c.out == d.out);
}

TEST_CASE("precision comes from the environment unless a flag overrides it") {
    std::string bin(CRANKLAB_BIN);
    RunResult env = run_raw("CRANKLAB_PRECISION=128 " + bin + " estimate --Q 5 --n 50");
    CHECK(env.code == 0);
    CHECK(nlohmann::json::parse(env.out)["precision_bits"] == 128);

    RunResult flag = run_raw("CRANKLAB_PRECISION=128 " + bin +
                             " estimate --Q 5 --n 50 --precision 192");
    CHECK(flag.code == 0);
    CHECK(nlohmann::json::parse(flag.out)["precision_bits"] == 192);

    CHECK(run("estimate --Q 5 --n 50 --precision 32").code == 2);
}

TEST_CASE("--out writes exactly what stdout would have carried") {
    std::string path = "cranklab_cli_out.tmp";
    RunResult direct = run("table --Q 3 --n-max 5");
    RunResult redirected = run("table --Q 3 --n-max 5 --out " + path);
    CHECK(redirected.code == 0);
    CHECK(redirected.out.empty());

    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == direct.out);
    std::remove(path.c_str());
}
