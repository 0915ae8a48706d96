#include "ehrelay/figures.hpp"

#include <stdexcept>

#include "ehrelay/analytic.hpp"

namespace ehrelay::figures {

namespace {

using schemes::SchemeKind;

constexpr double kFigGammaDbStep = 2.0;

std::vector<double> db_grid() {
    std::vector<double> v;
    for (double db = 0.0; db <= 20.0; db += kFigGammaDbStep) v.push_back(db);
    return v;
}

struct RowBuilder {
    RunMode mode;
    mc::TrialConfig base_cfg;
    std::uint64_t row_index = 0;
    std::vector<report::Row> rows;

    void add(const SchemeKind& kind, const model::SystemParams& params) {
        if (mode == RunMode::analytic && kind.battery_backed()) return;  // no closed form
        mc::TrialConfig cfg = base_cfg;
        cfg.seed = mix_seed(base_cfg.seed, row_index++);
        rows.push_back(evaluate_point(kind, params, mode, cfg));
    }
};

}  // namespace

report::Row evaluate_point(const SchemeKind& kind, const model::SystemParams& params,
                           RunMode mode, const mc::TrialConfig& cfg) {
    params.validate();
    report::Row row;
    row.scheme = kind.name();
    row.gamma_db = model::linear_to_db(params.gamma);
    row.eta = params.eta;
    row.rate = params.rate;
    row.n_relays = params.n_relays;
    row.seed = cfg.seed;
    if (kind.family == SchemeKind::Family::tps) row.rho_fixed = kind.tps_rho;

    if (mode != RunMode::simulate && !kind.battery_backed()) {
        const auto v = analytic::outage_analytic(kind, params);
        row.p_out_analytic = v.p_out;
        row.method = analytic::method_name(v.method);
    }
    if (mode != RunMode::analytic) {
        const auto est = mc::estimate_outage(kind, params, cfg);
        row.p_out_mc = est.p_hat;
        row.ci_low = est.ci_low;
        row.ci_high = est.ci_high;
        row.trials = est.trials_used;
        if (row.method.empty()) row.method = "mc";
    }
    return row;
}

std::vector<report::Row> figure(int number, RunMode mode, const mc::TrialConfig& cfg) {
    RowBuilder b{mode, cfg, 0, {}};
    const auto base = model::SystemParams::defaults();

    switch (number) {
        case 3: {
            // Outage vs fixed PSR for TPS, with the OPS reference level.
            for (int k = 1; k <= 19; ++k) {
                const double rho = k / 20.0;
                b.add(SchemeKind::tps(rho), base);
            }
            b.add(SchemeKind::ops(), base);
            break;
        }
        case 4: {
            // Outage vs conversion efficiency for two rates.
            for (double rate : {0.5, 1.0})
                for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops()})
                    for (int k = 1; k <= 10; ++k) {
                        auto p = base;
                        p.rate = rate;
                        p.eta = k / 10.0;
                        b.add(kind, p);
                    }
            break;
        }
        case 5: {
            // Outage vs SNR for two rates.
            for (double rate : {0.5, 1.0})
                for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops()})
                    for (double db : db_grid()) {
                        auto p = base;
                        p.rate = rate;
                        p.gamma = model::db_to_linear(db);
                        b.add(kind, p);
                    }
            break;
        }
        case 6: {
            // Outage vs SNR for two conversion efficiencies.
            for (double eta : {0.4, 0.8})
                for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops()})
                    for (double db : db_grid()) {
                        auto p = base;
                        p.eta = eta;
                        p.gamma = model::db_to_linear(db);
                        b.add(kind, p);
                    }
            break;
        }
        case 7: {
            // Outage vs SNR for two relay counts.
            for (int n : {4, 8})
                for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops()})
                    for (double db : db_grid()) {
                        auto p = model::SystemParams::symmetric(model::db_to_linear(db), base.eta,
                                                                base.rate, n, 1.0,
                                                                base.gamma_b_max);
                        b.add(kind, p);
                    }
            break;
        }
        case 8: {
            // Outage vs number of relays for two rates.
            for (double rate : {0.5, 1.0})
                for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops()})
                    for (int n = 2; n <= 8; ++n) {
                        auto p = model::SystemParams::symmetric(base.gamma, base.eta, rate, n,
                                                                1.0, base.gamma_b_max);
                        b.add(kind, p);
                    }
            break;
        }
        case 9: {
            // Outage vs SNR for all four schemes.
            for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops(), SchemeKind::ehb_af(),
                                     SchemeKind::ehb_df()})
                for (double db : db_grid()) {
                    auto p = base;
                    p.gamma = model::db_to_linear(db);
                    b.add(kind, p);
                }
            break;
        }
        case 10: {
            // Outage vs number of relays for all four schemes.
            for (const auto& kind : {SchemeKind::eps(), SchemeKind::ops(), SchemeKind::ehb_af(),
                                     SchemeKind::ehb_df()})
                for (int n = 2; n <= 8; ++n) {
                    auto p = model::SystemParams::symmetric(base.gamma, base.eta, base.rate, n,
                                                            1.0, base.gamma_b_max);
                    b.add(kind, p);
                }
            break;
        }
        default:
            throw std::invalid_argument("figure: number must be between 3 and 10");
    }
    return std::move(b.rows);
}

}  // namespace ehrelay::figures
