#include <cmath>

#include <doctest.h>
#include <json.hpp>

#include "ehrelay/report.hpp"

using namespace ehrelay::report;

TEST_SUITE_BEGIN("report");

namespace {

Row sample_row() {
    Row r;
    r.scheme = "tps";
    r.gamma_db = 15.0;
    r.eta = 0.5;
    r.rate = 1.0;
    r.n_relays = 6;
    r.rho_fixed = 1.0 / 3.0;
    r.p_out_analytic = 0.015039281234567891;
    r.p_out_mc = 0.0150432;
    r.ci_low = 0.0147;
    r.ci_high = 0.0153;
    r.trials = 1'000'000;
    r.seed = 777;
    r.method = "quadrature";
    return r;
}

}  // namespace

TEST_CASE("doubles round-trip through their formatted form") {
    for (double v : {1.0 / 3.0, 0.015039281234567891, 1e-17, 31.622776601683793, 0.0}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("csv round-trips bit-exactly") {
    std::vector<Row> rows{sample_row()};
    rows.push_back(sample_row());
    rows[1].scheme = "ops";
    rows[1].rho_fixed.reset();
    rows[1].p_out_analytic.reset();
    rows[1].trials.reset();
    rows[1].p_out_mc.reset();
    rows[1].ci_low.reset();
    rows[1].ci_high.reset();
    rows[1].method = "bessel_closed_form";

    const std::string text = to_csv(rows);
    const auto parsed = parse_csv(text);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(parsed[i].scheme == rows[i].scheme);
        CHECK(parsed[i].gamma_db == rows[i].gamma_db);
        CHECK(parsed[i].eta == rows[i].eta);
        CHECK(parsed[i].rate == rows[i].rate);
        CHECK(parsed[i].n_relays == rows[i].n_relays);
        CHECK(parsed[i].rho_fixed == rows[i].rho_fixed);
        CHECK(parsed[i].p_out_analytic == rows[i].p_out_analytic);
        CHECK(parsed[i].p_out_mc == rows[i].p_out_mc);
        CHECK(parsed[i].ci_low == rows[i].ci_low);
        CHECK(parsed[i].ci_high == rows[i].ci_high);
        CHECK(parsed[i].trials == rows[i].trials);
        CHECK(parsed[i].seed == rows[i].seed);
        CHECK(parsed[i].method == rows[i].method);
    }
}

TEST_CASE("json mirrors the csv columns as records") {
    std::vector<Row> rows{sample_row()};
    const auto parsed = nlohmann::json::parse(to_json(rows));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    const auto& rec = parsed[0];
    CHECK(rec["scheme"] == "tps");
    CHECK(rec["gamma_db"].get<double>() == 15.0);
    CHECK(rec["n_relays"].get<int>() == 6);
    CHECK(rec["rho_fixed"].get<double>() == doctest::Approx(1.0 / 3.0));
    CHECK(rec["trials"].get<std::uint64_t>() == 1'000'000);
    CHECK(rec["method"] == "quadrature");

    auto r2 = sample_row();
    r2.p_out_analytic.reset();
    const auto parsed2 = nlohmann::json::parse(to_json({r2}));
    CHECK(parsed2[0]["p_out_analytic"].is_null());
}

TEST_CASE("malformed csv is rejected") {
    CHECK_THROWS(parse_csv("no,header\n1,2\n"));
    CHECK_THROWS(parse_csv(std::string(kCsvHeader) + "\nops,1,2\n"));
}

TEST_SUITE_END();
