#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "expsieve/cli.hpp"

namespace {

int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("expsieve");
    for (const auto& a : args) argv.push_back(a.c_str());
    return expsieve::run(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    explicit TempFile(std::string name) : path(std::move(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

}  // namespace

TEST_CASE("density emits the pinned CSV rows") {
    TempFile tmp("cli_density.csv");
    const int rc = run_cli({"density", "--poly", "X^2 - t1 - 1", "--base", "2",
                            "--N", "10,100", "--threads", "1", "--out", tmp.path});
    CHECK(rc == 0);
    const std::string expected =
        "mode,N,total,favorable,density_num,density_den,fallbacks,inconclusive,"
        "skips\n"
        "no_root,10,21,20,20,21,1,0,0\n"
        "no_root,100,201,200,200,201,2,0,0\n";
    CHECK(slurp(tmp.path) == expected);
}

TEST_CASE("reruns are byte-identical") {
    TempFile a("cli_rerun_a.txt"), b("cli_rerun_b.txt");
    const std::vector<std::string> cmd{"sieve", "--poly", "X^2 - t1 - 1",
                                       "--base", "2",    "--N",  "5",
                                       "--out",  ""};
    auto with_out = [&](const std::string& path) {
        auto c = cmd;
        c.back() = path;
        return c;
    };
    CHECK(run_cli(with_out(a.path)) == 0);
    CHECK(run_cli(with_out(b.path)) == 0);
    const std::string sa = slurp(a.path);
    CHECK(sa == slurp(b.path));
    CHECK(sa.find("verdict: no_root_certified") != std::string::npos);
}

TEST_CASE("sieve JSON is well formed") {
    TempFile tmp("cli_sieve.json");
    const int rc = run_cli({"sieve", "--poly", "X^2 - t1 - 1", "--base", "2",
                            "--N", "3", "--json", "--out", tmp.path});
    CHECK(rc == 0);
    const auto j = nlohmann::json::parse(slurp(tmp.path));
    CHECK(j["verdict"] == "root_found");
    CHECK(j["via_exact"] == true);
    CHECK(j["root"] == "3");
}

TEST_CASE("exit codes separate unprovable from misuse") {
    // Pattern intersection cannot close X^4 + 1, so certification fails.
    CHECK(run_cli({"sieve", "--poly", "X^4 + 1", "--mode", "irreducible"}) == 1);
    // Malformed polynomial.
    CHECK(run_cli({"sieve", "--poly", "X^2 +", "--base", "2", "--N", "1"}) == 2);
    // Unknown option.
    CHECK(run_cli({"sieve", "--poly", "X^2 - t1", "--nope", "1"}) == 2);
    // Missing subcommand.
    CHECK(run_cli({}) == 2);
    // Exponent arity mismatch.
    CHECK(run_cli({"sieve", "--poly", "X^2 - t1", "--base", "2"}) == 2);
    // Base inside the forbidden set.
    CHECK(run_cli({"sieve", "--poly", "X^2 - t1", "--base", "1", "--N", "1"}) == 2);
    // Help is not an error.
    CHECK(run_cli({"--help"}) == 0);
    CHECK(run_cli({"sieve", "--help"}) == 0);
}

TEST_CASE("primes emits one CSV row per qualified site") {
    TempFile tmp("cli_primes.csv");
    const int rc = run_cli({"primes", "--poly", "X^2 - t1 - 1", "--base", "2",
                            "--x", "100", "--t", "3", "--out", tmp.path});
    CHECK(rc == 0);
    std::istringstream in(slurp(tmp.path));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "p,ord_1,m_1");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("orders reports a fraction per threshold") {
    TempFile tmp("cli_orders.csv");
    const int rc = run_cli({"orders", "--base", "2", "--x", "2000", "--ell",
                            "1,2,4", "--out", tmp.path});
    CHECK(rc == 0);
    std::istringstream in(slurp(tmp.path));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "ell,fraction");
    std::vector<double> fractions;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        fractions.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(fractions.size() == 3);
    for (double v : fractions) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    CHECK(fractions[0] <= fractions[1]);
    CHECK(fractions[1] <= fractions[2]);
}

TEST_CASE("clique and gcdstats run over qualified sites") {
    TempFile tmp("cli_clique.json");
    const int rc = run_cli({"clique", "--poly", "X^2 - t1 - 1", "--base", "2",
                            "--x", "1000", "--z", "8", "--t", "16", "--json",
                            "--out", tmp.path});
    CHECK(rc == 0);
    const auto j = nlohmann::json::parse(slurp(tmp.path));
    CHECK(j["meets_bound"] == true);
    CHECK(j["size"].get<std::size_t>() >= j["lower_bound"].get<std::size_t>());

    TempFile tmp2("cli_gcd.csv");
    const int rc2 = run_cli({"gcdstats", "--poly", "X^2 - t1 - 1", "--base", "2",
                             "--x", "1000", "--t", "16", "--out", tmp2.path});
    CHECK(rc2 == 0);
    std::istringstream in(slurp(tmp2.path));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "value,count");
}

TEST_CASE("lemma battery reports pass or fail through the exit code") {
    TempFile tmp("cli_lemmas.csv");
    const int rc = run_cli({"lemmas", "--check", "phi_tail", "--z", "10,100",
                            "--limit", "100000", "--out", tmp.path});
    CHECK(rc == 0);
    std::istringstream in(slurp(tmp.path));
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "lemma_id,params,measured,bound,slack,pass");
    int rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find("phi_tail:z=") == 0);
        CHECK(line.find(",true") != std::string::npos);
        ++rows;
    }
    CHECK(rows == 2);

    // A per-prime scan through the CLI.
    TempFile tmp2("cli_lemma_one.csv");
    const int rc2 = run_cli({"lemmas", "--check", "one_prime", "--poly",
                             "X^2 - t1 - 1", "--x", "101", "--out", tmp2.path});
    CHECK(rc2 == 0);
    CHECK(slurp(tmp2.path).find("one_prime:root_fraction,") != std::string::npos);
}

TEST_CASE("schedule derives consistent parameters and flags impossible boxes") {
    TempFile tmp("cli_schedule.txt");
    CHECK(run_cli({"schedule", "--N", "1000000", "--out", tmp.path}) == 0);
    const std::string text = slurp(tmp.path);
    CHECK(text.find("ok: true") != std::string::npos);
    CHECK(text.find("x: 500") != std::string::npos);
    CHECK(text.find("z: 6") != std::string::npos);

    CHECK(run_cli({"schedule", "--N", "10"}) == 1);
    CHECK(run_cli({"schedule", "--N", "3"}) == 2);
}
