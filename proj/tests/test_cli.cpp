#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>

#ifndef CLI_BIN
#error "CLI_BIN must be defined"
#endif
#ifndef TEST_DATA_DIR
#define TEST_DATA_DIR "."
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CLI_BIN) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("exact subcommand prints fraction and rounded decimal") {
    const auto r = run("exact --formula bit_mean --n 100 --digits 10");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "formula bit_mean"));
    CHECK(contains(r.out, "exact "));
    CHECK(contains(r.out, "decimal 2295.05"));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("exact --n -5 --formula bit_mean").exit_code == 2);
    CHECK(run("exact --formula no_such_formula --n 5").exit_code == 2);
    CHECK(run("wrongsub").exit_code == 2);
    CHECK(run("exact --digits 1000 --formula bit_mean --n 5").exit_code == 2);
    CHECK(run("simulate --n 8 --stat \"\" --trials 2").exit_code == 2); // empty algorithms
    CHECK(run("poisson --stat nothing --lambda 2").exit_code == 2);
    CHECK(run("compare --grid 9,5 --trials 2").exit_code == 2); // not increasing
}

TEST_CASE("computation errors exit with code 1") {
    // 64 keys cannot separate within a 4-bit depth cap
    CHECK(run("simulate --n 64 --trials 50 --seed 1 --depth-cap 4").exit_code == 1);
}

TEST_CASE("asympt prints the oracle discrepancy when in range") {
    const auto r = run("asympt --formula rice_bit_mean --n 100");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "value 2295.05"));
    CHECK(contains(r.out, "discrepancy "));
}

TEST_CASE("poisson subcommand: value plus tail bound") {
    const auto r = run("poisson --stat bits --lambda 10");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "value "));
    CHECK(contains(r.out, "tail_bound "));
    CHECK(contains(r.out, "series_discrepancy "));
    const auto m = run(std::string("poisson --stat mu_f --lambda 10 --density ") +
                       TEST_DATA_DIR + "/linear.json");
    CHECK(m.exit_code == 0);
    CHECK(contains(m.out, "tail_bound "));
}

TEST_CASE("simulate output is byte-identical for a repeated seed") {
    const std::string args = "simulate --n 32 --trials 200 --seed 77 --stat all --format csv";
    const auto a = run(args), b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(contains(a.out, "# manifest:"));
    CHECK(contains(a.out, "statistic,trials,mean,var,se,min,max"));
    const auto j = run("simulate --n 16 --trials 50 --seed 4 --format json");
    CHECK(j.exit_code == 0);
    CHECK(contains(j.out, "\"results\""));
}

TEST_CASE("compare table carries provenance and exact small-n values") {
    const auto r = run("compare --grid 2 --trials 400 --seed 9");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "provenance"));
    CHECK(contains(r.out, "residue"));
    CHECK(contains(r.out, "2 B 2 "));
    CHECK(contains(r.out, "2 Q 2 "));
    const auto twice = run("compare --grid 2 --trials 400 --seed 9");
    CHECK(twice.out == r.out);
}
