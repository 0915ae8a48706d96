// End-to-end checks of the command-line binary through std::system.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "ehrelay/report.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(EHRELAY_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(cmd.c_str());
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("analytic point run emits one row without simulation columns") {
    const std::string out = "/tmp/ehrelay_test_analytic.csv";
    REQUIRE(run_cli("analytic --scheme ops --gamma-db 15 --output " + out) == 0);
    const auto rows = ehrelay::report::parse_csv(slurp(out));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].scheme == "ops");
    CHECK(rows[0].gamma_db == 15.0);
    CHECK(rows[0].p_out_analytic.has_value());
    CHECK_FALSE(rows[0].p_out_mc.has_value());
    CHECK(rows[0].method == "bessel_closed_form");
    std::remove(out.c_str());
}

TEST_CASE("diagnostics fail with nonzero status") {
    CHECK(run_cli("analytic --scheme bogus") != 0);
    CHECK(run_cli("analytic --scheme ehb_df") != 0);          // no closed form
    CHECK(run_cli("analytic --scheme ops --eta 1.5") != 0);   // out of range
    CHECK(run_cli("simulate --scheme ops --output /nonexistent_dir/x.csv --trials 10") != 0);
    CHECK(run_cli("figure 2") != 0);
    CHECK(run_cli("sweep --scheme ops --axis eta --values 0.5,1.5 --trials 10") != 0);
}

TEST_CASE("figure output is byte-identical across runs with one seed") {
    const std::string out_a = "/tmp/ehrelay_test_fig5_a.csv";
    const std::string out_b = "/tmp/ehrelay_test_fig5_b.csv";
    const std::string flags = "figure 5 --seed 7 --trials 20000 ";
    REQUIRE(run_cli(flags + "--output " + out_a) == 0);
    REQUIRE(run_cli(flags + "--output " + out_b) == 0);
    const std::string a = slurp(out_a), b = slurp(out_b);
    CHECK(!a.empty());
    CHECK(a == b);
    std::remove(out_a.c_str());
    std::remove(out_b.c_str());
}

TEST_CASE("config file fills defaults and flags override it") {
    const std::string cfg = "/tmp/ehrelay_test.cfg";
    {
        std::ofstream out(cfg);
        out << "# test configuration\n"
            << "scheme = eps\n"
            << "gamma_db = 10\n"
            << "relays = 3\n";
    }
    const std::string out_path = "/tmp/ehrelay_test_cfg.csv";
    REQUIRE(run_cli("analytic --config " + cfg + " --gamma-db 12 --output " + out_path) == 0);
    const auto rows = ehrelay::report::parse_csv(slurp(out_path));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].scheme == "eps");       // from config
    CHECK(rows[0].gamma_db == 12.0);      // flag wins
    CHECK(rows[0].n_relays == 3);         // from config
    std::remove(cfg.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("environment variable supplies the default config path") {
    const std::string cfg = "/tmp/ehrelay_env.cfg";
    {
        std::ofstream out(cfg);
        out << "scheme = tps\nrho = 0.25\n";
    }
    const std::string out_path = "/tmp/ehrelay_env_out.csv";
    const std::string cmd = "EHRELAY_CONFIG=" + cfg + " " + std::string(EHRELAY_CLI_PATH) +
                            " analytic --output " + out_path + " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const auto rows = ehrelay::report::parse_csv(slurp(out_path));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].scheme == "tps");
    CHECK(rows[0].rho_fixed == 0.25);
    std::remove(cfg.c_str());
    std::remove(out_path.c_str());
}

TEST_CASE("json output parses and mirrors the csv") {
    const std::string out = "/tmp/ehrelay_test.json";
    REQUIRE(run_cli("analytic --scheme eps,ops --format json --output " + out) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("\"scheme\": \"eps\"") != std::string::npos);
    CHECK(text.find("\"p_out_mc\": null") != std::string::npos);
    std::remove(out.c_str());
}

TEST_SUITE_END();
