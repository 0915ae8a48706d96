#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include <doctest.h>

#include "ehrelay/analytic.hpp"
#include "ehrelay/model.hpp"
#include "ehrelay/rng.hpp"

using namespace ehrelay;
using namespace ehrelay::analytic;
using model::SystemParams;

namespace {

std::vector<std::pair<double, double>> curve_45_to_60(const schemes::SchemeKind& kind, int n) {
    std::vector<std::pair<double, double>> curve;
    for (double db : {45.0, 50.0, 55.0, 60.0}) {
        const auto params = SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, n);
        const double p = kind.family == schemes::SchemeKind::Family::eps
                             ? outage_eps_quadrature(params).p_out
                             : outage_ops_closed(params).p_out;
        curve.emplace_back(params.gamma, p);
    }
    return curve;
}

}  // namespace

TEST_SUITE_BEGIN("analytic");

TEST_CASE("EPS outage by quadrature: limits and product structure") {
    // towards infinite SNR the outage vanishes
    const auto p_hi = outage_eps_quadrature(SystemParams::symmetric(1e9, 0.5, 1.0, 2));
    CHECK(p_hi.p_out < 1e-8);
    // symmetric relays: doubling N squares the product
    const auto p2 = outage_eps_quadrature(SystemParams::symmetric(31.62, 0.5, 1.0, 2)).p_out;
    const auto p4 = outage_eps_quadrature(SystemParams::symmetric(31.62, 0.5, 1.0, 4)).p_out;
    CHECK(p4 == doctest::Approx(p2 * p2).epsilon(1e-10));
}

TEST_CASE("EPS outage: series agrees with quadrature and falls back") {
    for (double db : {10.0, 20.0, 30.0}) {
        const auto params = SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, 6);
        const auto series = outage_eps_series(params);
        REQUIRE(series.converged);
        CHECK(std::fabs(series.p_out - outage_eps_quadrature(params).p_out) < 1e-6);
    }
    // the public entry point records which route produced the number
    const auto params = SystemParams::defaults();
    const auto v = outage_eps(params);
    CHECK(v.converged);
    CHECK(v.method == Method::series);
    // starved truncation budget reports non-convergence instead of lying
    const auto tight = outage_eps_series(params, specfun::SeriesControl{2, 1e-12});
    CHECK_FALSE(tight.converged);
    const auto fallback = outage_eps(params, specfun::SeriesControl{2, 1e-12});
    CHECK(fallback.method == Method::quadrature);
    CHECK(fallback.converged);
}

TEST_CASE("OPS closed form: frozen single-relay value") {
    // delta = 0.25 at gamma = 24, R = 1, eta = 0.5:
    // 1 - exp(-0.125) K1(1) = 0.46880731...
    const auto params = SystemParams::symmetric(24.0, 0.5, 1.0, 1);
    const auto t = model::derive_thresholds(params);
    REQUIRE(t.delta == doctest::Approx(0.25).epsilon(1e-15));
    const double p = outage_ops_closed(params).p_out;
    CHECK(p == doctest::Approx(0.46881873).epsilon(1e-6));

    // Monte-Carlo on the underlying event g_si < delta/g_id + delta*eta
    Rng rng(2024, 0);
    const int trials = 1'000'000;
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
        const double g_si = rng.exponential(1.0);
        const double g_id = rng.exponential(1.0);
        if (g_si < t.delta / g_id + t.delta * params.eta) ++hits;
    }
    const double p_hat = static_cast<double>(hits) / trials;
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / trials);
    CHECK(std::fabs(p - p_hat) < 5.0 * se);
}

TEST_CASE("OPS closed form: symmetric product and monotonicity") {
    const auto q1 = outage_ops_closed(SystemParams::symmetric(31.62, 0.5, 1.0, 1)).p_out;
    const auto q6 = outage_ops_closed(SystemParams::symmetric(31.62, 0.5, 1.0, 6)).p_out;
    CHECK(q6 == doctest::Approx(std::pow(q1, 6)).epsilon(1e-10));

    double prev = 1.0;
    for (double db : {0.0, 5.0, 10.0, 15.0, 20.0}) {  // decreasing in gamma
        const double p =
            outage_ops_closed(SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, 4)).p_out;
        CHECK(p < prev);
        prev = p;
    }
    prev = 1.0;
    for (double eta : {0.2, 0.4, 0.6, 0.8, 1.0}) {  // decreasing in eta
        const double p = outage_ops_closed(SystemParams::symmetric(31.62, eta, 1.0, 4)).p_out;
        CHECK(p < prev);
        prev = p;
    }
    prev = 0.0;
    for (double rate : {0.5, 1.0, 1.5, 2.0}) {  // increasing in rate
        const double p = outage_ops_closed(SystemParams::symmetric(31.62, 0.5, rate, 4)).p_out;
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("TPS quadrature: EPS is the half split, endpoints are certain outage") {
    const auto params = SystemParams::defaults();
    CHECK(outage_tps_quadrature(params, 0.5).p_out ==
          doctest::Approx(outage_eps_quadrature(params).p_out).epsilon(1e-12));
    CHECK(outage_tps_quadrature(params, 0.0).p_out == 1.0);
    CHECK(outage_tps_quadrature(params, 1.0).p_out == 1.0);
    CHECK_THROWS_AS(outage_tps_quadrature(params, 1.5), std::invalid_argument);
}

TEST_CASE("OPS dominates EPS across a parameter grid") {
    for (double db : {0.0, 10.0, 20.0})
        for (double eta : {0.4, 0.8})
            for (int n : {1, 4}) {
                const auto params =
                    SystemParams::symmetric(model::db_to_linear(db), eta, 1.0, n);
                CHECK(outage_ops_closed(params).p_out <=
                      outage_eps_quadrature(params).p_out + 1e-12);
            }
}

TEST_CASE("asymptotic forms") {
    const auto params = SystemParams::symmetric(model::db_to_linear(60.0), 0.5, 1.0, 2);
    const double eps_asym = outage_asymptotic(schemes::SchemeKind::eps(), params).p_out;
    const double ops_asym = outage_asymptotic(schemes::SchemeKind::ops(), params).p_out;
    // factor-2 per relay between the two schemes' constants
    CHECK(eps_asym / ops_asym == doctest::Approx(4.0).epsilon(1e-12));
    // exact 1/gamma^N scaling under doubling
    auto doubled = params;
    doubled.gamma = 2.0 * params.gamma;
    CHECK(outage_asymptotic(schemes::SchemeKind::ops(), doubled).p_out == 0.25 * ops_asym);
    CHECK_THROWS_AS(outage_asymptotic(schemes::SchemeKind::ehb_df(), params),
                    std::invalid_argument);
}

TEST_CASE("exact outage exceeds the polynomial asymptote by a growing log factor") {
    // Per relay the exact laws decay like log(gamma)/gamma while the
    // asymptote keeps only the 1/gamma constant, so the ratio grows slowly
    // with SNR instead of approaching one.  Frozen from the quadrature and
    // Bessel routes: EPS ratio 15.49 at 45 dB, 22.39 at 60 dB; OPS 17.83
    // and 24.74.
    auto ratio = [](const schemes::SchemeKind& kind, double db) {
        const auto params = SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, 1);
        const double exact = kind.family == schemes::SchemeKind::Family::eps
                                 ? outage_eps_quadrature(params).p_out
                                 : outage_ops_closed(params).p_out;
        return exact / outage_asymptotic(kind, params).p_out;
    };
    CHECK(ratio(schemes::SchemeKind::eps(), 45.0) == doctest::Approx(15.486).epsilon(0.01));
    CHECK(ratio(schemes::SchemeKind::eps(), 60.0) == doctest::Approx(22.390).epsilon(0.01));
    CHECK(ratio(schemes::SchemeKind::ops(), 45.0) == doctest::Approx(17.831).epsilon(0.01));
    CHECK(ratio(schemes::SchemeKind::ops(), 60.0) == doctest::Approx(24.739).epsilon(0.01));
    for (const auto& kind : {schemes::SchemeKind::eps(), schemes::SchemeKind::ops()})
        CHECK(ratio(kind, 60.0) > ratio(kind, 45.0));
}

TEST_CASE("diversity fit recovers exact power laws") {
    std::vector<std::pair<double, double>> curve;
    for (double db : {50.0, 55.0, 60.0}) {
        const auto params = SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, 3);
        curve.emplace_back(params.gamma,
                           outage_asymptotic(schemes::SchemeKind::ops(), params).p_out);
    }
    CHECK(diversity_fit(curve) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("diversity fit on the exact curves carries the finite-SNR log correction") {
    // The exact outage laws behave like (log gamma) / gamma per relay, so a
    // finite 45..60 dB window reads about 0.9 of the nominal slope per
    // relay, and the shortfall scales with N through the product form.
    const double d_eps_1 = diversity_fit(curve_45_to_60(schemes::SchemeKind::eps(), 1));
    CHECK(std::fabs(d_eps_1 - 1.0) <= 0.15);
    CHECK(d_eps_1 == doctest::Approx(0.89335).epsilon(1e-3));

    const double d_ops_1 = diversity_fit(curve_45_to_60(schemes::SchemeKind::ops(), 1));
    CHECK(std::fabs(d_ops_1 - 1.0) <= 0.15);
    CHECK(d_ops_1 == doctest::Approx(0.90528).epsilon(1e-3));

    const double d_ops_2 = diversity_fit(curve_45_to_60(schemes::SchemeKind::ops(), 2));
    CHECK(d_ops_2 == doctest::Approx(2.0 * d_ops_1).epsilon(1e-6));
    const double d_eps_3 = diversity_fit(curve_45_to_60(schemes::SchemeKind::eps(), 3));
    CHECK(d_eps_3 == doctest::Approx(3.0 * d_eps_1).epsilon(1e-4));

    // the slope creeps towards N as the window moves up in SNR
    auto window_slope = [](double lo_db, double hi_db) {
        std::vector<std::pair<double, double>> curve;
        for (double db = lo_db; db <= hi_db; db += 5.0) {
            const auto params = SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, 2);
            curve.emplace_back(params.gamma, outage_ops_closed(params).p_out);
        }
        return diversity_fit(curve);
    };
    CHECK(window_slope(80.0, 95.0) > window_slope(45.0, 60.0));
    CHECK(window_slope(120.0, 135.0) > window_slope(80.0, 95.0));
}

TEST_CASE("diversity fit rejects degenerate inputs") {
    using curve_t = std::vector<std::pair<double, double>>;
    CHECK_THROWS_AS(diversity_fit(curve_t{{10.0, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(diversity_fit(curve_t{{10.0, 0.1}, {10.0, 0.2}}), std::invalid_argument);
    CHECK_THROWS_AS(diversity_fit(curve_t{{10.0, 0.0}, {20.0, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(diversity_fit(curve_t{{-1.0, 0.1}, {20.0, 0.1}}), std::invalid_argument);
}

TEST_CASE("restricted moments") {
    // decreasing towards zero with SNR
    double prev_ez = 1e300, prev_ez2 = 1e300;
    for (double db : {10.0, 30.0, 60.0}) {
        const auto m =
            appendix_moments(SystemParams::symmetric(model::db_to_linear(db), 0.5, 1.0, 1));
        CHECK(m.e_z < prev_ez);
        CHECK(m.e_z2 < prev_ez2);
        CHECK(m.var_z >= -1e-12);
        prev_ez = m.e_z;
        prev_ez2 = m.e_z2;
    }
    // leading-order second moment: E(z^2) * gamma -> 2(2^{2R}-1)/eta^2 = 24
    const auto m60 = appendix_moments(SystemParams::symmetric(1e6, 0.5, 1.0, 1));
    CHECK(m60.e_z2 * 1e6 == doctest::Approx(24.0).epsilon(0.1));
}

TEST_SUITE_END();
