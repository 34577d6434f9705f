// Drives the CLI binary and pins its output/exit-code contract.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " 2>&1";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace

TEST_CASE("series eval prints exact terms") {
    const auto r = run("series eval --series altharmonic --count 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0: 1 ") != std::string::npos);
    CHECK(r.output.find("1: -1/2 ") != std::string::npos);
}

TEST_CASE("classify prints a verdict and exits 0") {
    const auto r =
        run("series classify --series altharmonic --set omega --horizon 4096 --tol 1/100");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("kind: Converged") != std::string::npos);
    CHECK(r.output.find("conditional: Holds") != std::string::npos);
}

TEST_CASE("csv trace has horizon+1 rows and the documented header") {
    const std::string path = "/tmp/subseries_cli_trace.csv";
    const auto r = run("series classify --series altharmonic --set evens --horizon 64 "
                       "--tol 1/100 --margin 1/100 --csv " +
                       path);
    CHECK(r.exit_code == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,sum_exact,sum_decimal");
    std::size_t rows = 0;
    std::string row6;
    while (std::getline(in, line)) {
        if (rows == 6) row6 = line;
        ++rows;
    }
    CHECK(rows == 65);
    CHECK(row6.rfind("6,23/15,", 0) == 0);  // exact rational first, decimal annotation after
    std::remove(path.c_str());
}

TEST_CASE("construct prints reusable specs") {
    const auto r = run("construct split-witness --set \"periodic(,1100)\" --horizon 4096");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("split_witness(periodic(,1100))") != std::string::npos);
    const auto d = run("construct d-bound --series altharmonic --blocks 3");
    CHECK(d.exit_code == 0);
    CHECK(d.output.find("boundaries([0,4,12,") != std::string::npos);
}

TEST_CASE("extract verifies inequalities before printing") {
    const auto r = run("extract oscillation --series altharmonic --set evens --count 2 "
                       "--horizon 131072 --margin 1/4");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("c: 1") != std::string::npos);
    CHECK(r.output.find("orientation: PosInX") != std::string::npos);
    CHECK(r.output.find("exact: pass") != std::string::npos);
    // horizon exhaustion is a verification failure: exit 1 with partials
    const auto x = run("extract oscillation --series altharmonic --set evens --count 10 "
                       "--horizon 8192 --margin 1/4");
    CHECK(x.exit_code == 1);
    CHECK(x.output.find("horizon exhausted") != std::string::npos);
}

TEST_CASE("verify reports JSON and exit codes reflect the verdict") {
    const std::string path = "/tmp/subseries_cli_report.json";
    const auto good = run("verify tukey --candidate splitting --trials 20 --horizon 2048 "
                          "--tol 1/100 --margin 1/4 --seed 20250101 --json " +
                          path);
    CHECK(good.exit_code == 0);
    CHECK(good.output.find("pass: yes") != std::string::npos);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string j = ss.str();
    for (const char* key : {"\"candidate\"", "\"master_seed\"", "\"counts\"", "\"violations\"",
                            "\"pass\"", "\"cfg\""})
        CHECK(j.find(key) != std::string::npos);
    std::remove(path.c_str());

    const auto bad = run("verify tukey --candidate splitting --control --trials 60 "
                         "--horizon 4096 --tol 1/100 --margin 1/4 --seed 20250101");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("pass: no") != std::string::npos);
}

TEST_CASE("demo ssn-n3 names a surviving index") {
    const auto r = run("demo ssn-n3 --series \"alternating_on(compl(mod(3,0)))\" "
                       "--level 2 --horizon 200000");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("surviving j:") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("series eval --series \"perturb(altharmonic,\"").exit_code == 2);
    CHECK(run("series eval").exit_code == 2);       // missing required option
    CHECK(run("bogus-subcommand").exit_code == 2);  // unknown subcommand
    CHECK(run("series classify --series altharmonic --set omega --horizon 16 --tail 7/2")
              .exit_code == 2);  // invalid config
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli_contract [doctest flags] <binary>\n");
        return 1;
    }
    g_binary = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - 1, argv);
    return ctx.run();
}
