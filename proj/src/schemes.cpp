#include "ehrelay/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ehrelay::schemes {

std::string SchemeKind::name() const {
    switch (family) {
        case Family::eps: return "eps";
        case Family::tps: return "tps";
        case Family::ops: return "ops";
        case Family::ehb_df: return "ehb_df";
        case Family::ehb_af: return "ehb_af";
    }
    return "?";
}

std::optional<SchemeKind> SchemeKind::parse(const std::string& text, double tps_rho) {
    std::string t;
    for (char c : text) t.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(c)));
    if (t == "eps") return eps();
    if (t == "tps") return tps(tps_rho);
    if (t == "ops") return ops();
    if (t == "ehb_df" || t == "df_ehb") return ehb_df();
    if (t == "ehb_af" || t == "af_ehb") return ehb_af();
    return std::nullopt;
}

double rho_ops(double eta, double g_id) { return 1.0 / (1.0 + eta * g_id); }

double rho_df_ehb(double gamma, double gamma_s, double g_si, double g_id, double eta) {
    // Written so that gamma_s == 0 reproduces rho_ops bit-exactly.
    const double num = 1.0 - gamma_s * g_id / (gamma * g_si);
    if (num <= 0.0) return 0.0;
    return num / (1.0 + eta * g_id);
}

double rho_af_ehb(double eta, double a, double b) {
    // (sqrt(eta) - a sqrt(b)) / (sqrt(eta) + sqrt(b) eta), clamped at zero,
    // factored so that a == 0 reduces to 1/(1 + sqrt(eta) sqrt(b)) bit-exactly.
    const double sqrt_eta = std::sqrt(eta);
    const double sqrt_b = std::sqrt(b);
    const double num = 1.0 - a * sqrt_b / sqrt_eta;
    if (num <= 0.0) return 0.0;
    return num / (1.0 + sqrt_eta * sqrt_b);
}

double capacity_df(double rho, double gamma, double gamma_s, double g_si, double g_id,
                   double eta) {
    const double snr_decode = (1.0 - rho) * gamma * g_si;
    const double snr_forward = rho * gamma * eta * g_si * g_id + gamma_s * g_id;
    return 0.5 * std::log2(1.0 + std::min(snr_decode, snr_forward));
}

double capacity_af(double rho, double gamma, double a, double g_si, double g_id, double eta) {
    if (g_id <= 0.0 || g_si <= 0.0) return 0.0;
    const double den = rho * eta + a;
    if (den <= 0.0) return 0.0;
    const double f = 1.0 / den + g_id / (1.0 - rho);  // rho == 1 -> f = inf -> capacity 0
    const double snr = gamma * g_si * g_id / f;
    return 0.5 * std::log2(1.0 + snr);
}

double capacity_af_exact(double rho, double gamma, double gamma_s, double g_si, double g_id,
                         double eta) {
    if (g_id <= 0.0 || g_si <= 0.0) return 0.0;
    const double gain2 = (rho * eta * gamma * g_si + gamma_s) / ((1.0 - rho) * gamma * g_si + 1.0);
    if (!(gain2 > 0.0)) return 0.0;
    const double snr = gain2 * g_si * g_id * (1.0 - rho) * gamma / (gain2 * g_id + 1.0);
    return 0.5 * std::log2(1.0 + snr);
}

double ops_metric(double eta, double g_si, double g_id) {
    return g_si * g_id / (1.0 + eta * g_id);
}

double relay_capacity(const SchemeKind& kind, const model::SystemParams& params, double g_si,
                      double g_id, double gamma_s, double& rho_out) {
    switch (kind.family) {
        case SchemeKind::Family::eps:
            rho_out = 0.5;
            return capacity_df(0.5, params.gamma, 0.0, g_si, g_id, params.eta);
        case SchemeKind::Family::tps:
            rho_out = kind.tps_rho;
            return capacity_df(kind.tps_rho, params.gamma, 0.0, g_si, g_id, params.eta);
        case SchemeKind::Family::ops:
            rho_out = rho_ops(params.eta, g_id);
            return capacity_df(rho_out, params.gamma, 0.0, g_si, g_id, params.eta);
        case SchemeKind::Family::ehb_df:
            if (g_si <= 0.0) {
                rho_out = 0.0;  // dead source link, capacity 0 regardless of rho
                return 0.0;
            }
            rho_out = rho_df_ehb(params.gamma, gamma_s, g_si, g_id, params.eta);
            return capacity_df(rho_out, params.gamma, gamma_s, g_si, g_id, params.eta);
        case SchemeKind::Family::ehb_af: {
            if (g_si <= 0.0 || g_id <= 0.0) {
                rho_out = 0.0;
                return 0.0;
            }
            const double a = gamma_s / (params.gamma * g_si);
            rho_out = rho_af_ehb(params.eta, a, g_id);
            return capacity_af(rho_out, params.gamma, a, g_si, g_id, params.eta);
        }
    }
    rho_out = 0.0;
    return 0.0;
}

SelectionResult select(const SchemeKind& kind, const model::SystemParams& params,
                       const model::ChannelDraw& draw, const RelayBatteryState& battery) {
    const auto n = static_cast<std::size_t>(params.n_relays);
    if (draw.g_si.size() != n || draw.g_id.size() != n)
        throw std::invalid_argument("select: draw size does not match n_relays");
    const bool use_battery = kind.battery_backed();
    if (use_battery && battery.p_s.size() != n)
        throw std::invalid_argument("select: battery size does not match n_relays");

    SelectionResult result;
    result.per_relay_capacity.resize(n);
    double best_rho = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rho = 0.0;
        const double gamma_s = use_battery ? battery.p_s[i] : 0.0;
        const double cap =
            relay_capacity(kind, params, draw.g_si[i], draw.g_id[i], gamma_s, rho);
        result.per_relay_capacity[i] = cap;
        if (i == 0 || cap > result.capacity) {
            result.capacity = cap;
            result.index = static_cast<int>(i);
            best_rho = rho;
        }
    }
    result.rho = best_rho;
    return result;
}

void battery_update_df(RelayBatteryState& state, std::optional<int> selected,
                       const model::SystemParams& params, const model::ChannelDraw& draw) {
    const double cap = params.gamma_b_max;
    for (std::size_t j = 0; j < state.p_s.size(); ++j) {
        if (selected && static_cast<std::size_t>(*selected) == j) {
            // Selected relay drains gamma g_si / g_id, floored at empty.
            const double drain = params.gamma * draw.g_si[j] / draw.g_id[j];
            const double left = state.p_s[j] - drain;
            state.p_s[j] = left > 0.0 ? std::min(left, cap) : 0.0;
        } else {
            state.p_s[j] = std::min(state.p_s[j] + params.eta * params.gamma * draw.g_si[j], cap);
        }
    }
}

void battery_update_af(RelayBatteryState& state, std::optional<int> selected,
                       const model::SystemParams& params, const model::ChannelDraw& draw) {
    const double cap = params.gamma_b_max;
    for (std::size_t j = 0; j < state.p_s.size(); ++j) {
        if (selected && static_cast<std::size_t>(*selected) == j) {
            state.p_s[j] = 0.0;
        } else {
            state.p_s[j] = std::min(state.p_s[j] + params.eta * params.gamma * draw.g_si[j], cap);
        }
    }
}

TimerOutcome timer_selection(const std::vector<double>& metrics, double timer_constant,
                             double collision_window) {
    if (!(timer_constant > 0.0))
        throw std::invalid_argument("timer_selection: timer_constant must be > 0");
    if (collision_window < 0.0)
        throw std::invalid_argument("timer_selection: collision_window must be >= 0");

    TimerOutcome out;
    int best = -1, second = -1;
    double t_best = 0.0, t_second = 0.0;
    for (std::size_t i = 0; i < metrics.size(); ++i) {
        if (!(metrics[i] > 0.0)) continue;  // a zero metric never fires
        const double t = timer_constant / metrics[i];
        if (best < 0 || t < t_best) {
            second = best;
            t_second = t_best;
            best = static_cast<int>(i);
            t_best = t;
        } else if (second < 0 || t < t_second) {
            second = static_cast<int>(i);
            t_second = t;
        }
    }
    if (best < 0) return out;  // all metrics zero
    if (second >= 0 && t_second - t_best < collision_window) {
        out.collided = true;
        return out;
    }
    out.winner = best;
    return out;
}

}  // namespace ehrelay::schemes
