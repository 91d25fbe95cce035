// Copyright (c) 2026 The truncrange authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end CLI checks.  The binary path arrives as the first non-flag
// command-line argument (wired up by ctest).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

std::string g_cli_path;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    REQUIRE_FALSE(g_cli_path.empty());
    const std::string cmd = "'" + g_cli_path + "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

double value_of(const std::string& text, const std::string& key) {
    const auto pos = text.find(key + "=");
    REQUIRE(pos != std::string::npos);
    return std::strtod(text.c_str() + pos + key.size() + 1, nullptr);
}

}  // namespace

TEST_CASE("variance verb prints both routes for a symmetric support") {
    const auto r = run_cli("variance --family cauchy --ell 1 --symmetric");
    CHECK(r.exit_code == 0);
    const double v1 = value_of(r.out, "variance");
    const double v2 = value_of(r.out, "variance_ell2h");
    CHECK(v1 == doctest::Approx(0.2732395).epsilon(1e-6));
    CHECK(v2 == doctest::Approx(0.2732395).epsilon(1e-6));
}

TEST_CASE("variance verb on a general support prints one route") {
    const auto r = run_cli("variance --family laplace --a -0.5 --b 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("variance=") != std::string::npos);
    CHECK(r.out.find("variance_ell2h=") == std::string::npos);
}

TEST_CASE("moment verb") {
    const auto r = run_cli("moment --family normal --a -1 --b 1 --c 0 --p 2");
    CHECK(r.exit_code == 0);
    CHECK(value_of(r.out, "moment") == doctest::Approx(0.29112).epsilon(1e-4));
}

TEST_CASE("hcurve emits a CSV whose first row sits at the uniform limit") {
    const auto r = run_cli("hcurve --family normal --ell-min 0.001 --ell-max 100 --points 200");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.out);
    std::string header, first;
    REQUIRE(std::getline(lines, header));
    REQUIRE(std::getline(lines, first));
    CHECK(header == "ell,h,sigma_over_ell");
    double ell = 0.0, h = 0.0;
    REQUIRE(std::sscanf(first.c_str(), "%lf,%lf", &ell, &h) == 2);
    CHECK(ell == doctest::Approx(1e-3).epsilon(1e-9));
    CHECK(h == doctest::Approx(1.0 / 3.0).epsilon(3e-3));
    // 200 data rows follow the header.
    int rows = 1;
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 200);
}

TEST_CASE("bounds-check prints a table and passes") {
    const auto r = run_cli("bounds-check --count 40 --seed 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("kind,checked,violations,worst_slack") != std::string::npos);
    CHECK(r.out.find("result=pass") != std::string::npos);
}

TEST_CASE("limits verb emits a sweep CSV and honors --tolerance") {
    const auto ok = run_cli("limits --family cauchy --mode h --direction small "
                            "--ell-min 0.01 --ell-max 1 --points 5 --tolerance 0.001");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("ell,observed,target,abs_error") != std::string::npos);

    const auto fail = run_cli("limits --family cauchy --mode h --direction small "
                              "--ell-min 0.5 --ell-max 1 --points 3 --tolerance 1e-9");
    CHECK(fail.exit_code == 2);
}

TEST_CASE("synth, curve, fit pipeline through files") {
    const std::string dir = "cli_test_tmp";
    REQUIRE(std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str()) == 0);

    const auto synth = run_cli("synth --family student-t2 --ell 2 --days 6 --per-day 400 "
                               "--seed 11 --output " + dir + "/series.csv");
    CHECK(synth.exit_code == 0);

    const auto curve = run_cli("curve --input " + dir + "/series.csv --schema returns "
                               "--grid 200 --output " + dir + "/curve.csv "
                               "--daily-output " + dir + "/daily.csv");
    CHECK(curve.exit_code == 0);

    const auto fit = run_cli("fit --input " + dir + "/curve.csv --output " + dir + "/fit.txt");
    CHECK(fit.exit_code == 0);

    std::ifstream fit_file(dir + "/fit.txt");
    std::stringstream fit_text;
    fit_text << fit_file.rdbuf();
    CHECK(fit_text.str().find("beta=") != std::string::npos);
    CHECK(fit_text.str().find("points_used=") != std::string::npos);

    std::ifstream daily_file(dir + "/daily.csv");
    std::string daily_header;
    std::getline(daily_file, daily_header);
    CHECK(daily_header == "day,count,sample_std,population_std,max_abs,ratio");

    CHECK(std::system(("rm -rf " + dir).c_str()) == 0);
}

TEST_CASE("validation failures exit 1") {
    CHECK(run_cli("no-such-verb").exit_code == 1);
    CHECK(run_cli("variance --family klein-bottle --ell 1").exit_code == 1);
    CHECK(run_cli("variance --family normal").exit_code == 1);           // no support given
    CHECK(run_cli("synth --family normal --ell 1").exit_code == 1);      // --seed required
    CHECK(run_cli("curve --input missing.csv --schema returns").exit_code == 1);
    CHECK(run_cli("moment --family normal --a -1 --b 1 --c 5 --p 2").exit_code == 1);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("variance --help").exit_code == 0);
}

int main(int argc, char** argv) {
    std::vector<const char*> doctest_args;
    doctest_args.push_back(argv[0]);
    for (int i = 1; i < argc; ++i) {
        if (g_cli_path.empty() && argv[i][0] != '-') {
            g_cli_path = argv[i];
        } else {
            doctest_args.push_back(argv[i]);
        }
    }
    if (g_cli_path.empty()) {
        const char* env = std::getenv("TRUNCRANGE_CLI");
        if (env) g_cli_path = env;
    }
    doctest::Context context(static_cast<int>(doctest_args.size()),
                             const_cast<char**>(doctest_args.data()));
    return context.run();
}
