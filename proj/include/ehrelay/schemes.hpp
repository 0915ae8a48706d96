#ifndef EHRELAY_SCHEMES_HPP
#define EHRELAY_SCHEMES_HPP

#include <optional>
#include <string>
#include <vector>

#include "ehrelay/model.hpp"

namespace ehrelay::schemes {

// The five relay-selection schemes.  TPS carries its fixed power-splitting
// ratio; the others are parameter-free.
struct SchemeKind {
    enum class Family { eps, tps, ops, ehb_df, ehb_af };

    Family family = Family::ops;
    double tps_rho = 0.5;  // meaningful for tps only

    static SchemeKind eps() { return {Family::eps, 0.5}; }
    static SchemeKind tps(double rho) { return {Family::tps, rho}; }
    static SchemeKind ops() { return {Family::ops, 0.0}; }
    static SchemeKind ehb_df() { return {Family::ehb_df, 0.0}; }
    static SchemeKind ehb_af() { return {Family::ehb_af, 0.0}; }

    bool battery_backed() const { return family == Family::ehb_df || family == Family::ehb_af; }
    std::string name() const;
    // Recognizes eps|tps|ops|ehb_df|ehb_af (case-insensitive, '-' == '_').
    static std::optional<SchemeKind> parse(const std::string& text, double tps_rho = 0.5);
};

// Per-relay stored battery power, SNR-normalized (gamma_i^s = P_i^s / N0).
// Starts at zero and stays within [0, gamma_b_max].
struct RelayBatteryState {
    std::vector<double> p_s;

    static RelayBatteryState zeros(int n_relays) {
        return {std::vector<double>(static_cast<std::size_t>(n_relays), 0.0)};
    }
};

// PSR balancing decoder SNR against relay-destination SNR: 1/(1 + eta g_id).
double rho_ops(double eta, double g_id);

// Battery-aware DF PSR: [ (1 - gamma_s g_id / (gamma g_si)) / (1 + eta g_id) ]+.
// Requires g_si > 0.
double rho_df_ehb(double gamma, double gamma_s, double g_si, double g_id, double eta);

// Battery-aware AF PSR minimizing f(rho) = 1/(rho eta + a) + b/(1 - rho),
// a = gamma_s/(gamma g_si), b = g_id.
double rho_af_ehb(double eta, double a, double b);

// min( log2(1+(1-rho) gamma g_si)/2, log2(1 + rho gamma eta g_si g_id + gamma_s g_id)/2 ).
double capacity_df(double rho, double gamma, double gamma_s, double g_si, double g_id,
                   double eta);

// AF end-to-end capacity with the high-SNR amplification factor:
// log2(1 + gamma g_si g_id / f(rho)) / 2 with a = gamma_s/(gamma g_si).
double capacity_af(double rho, double gamma, double a, double g_si, double g_id, double eta);

// Diagnostic variant keeping the +N0 term in the amplification factor.
double capacity_af_exact(double rho, double gamma, double gamma_s, double g_si, double g_id,
                         double eta);

struct SelectionResult {
    int index = 0;                          // chosen relay
    double rho = 0.0;                       // its power-splitting ratio
    double capacity = 0.0;                  // end-to-end capacity, bit/s/Hz
    std::vector<double> per_relay_capacity; // diagnostics, length N
};

// Per-relay capacity and PSR under `kind`; used by select() and the
// Monte-Carlo kernels.  gamma_s is ignored for non-battery schemes.
double relay_capacity(const SchemeKind& kind, const model::SystemParams& params, double g_si,
                      double g_id, double gamma_s, double& rho_out);

// Argmax of end-to-end capacity over relays, ties broken by lowest index.
// The battery state is ignored (treated as zeros) for EPS/TPS/OPS.
SelectionResult select(const SchemeKind& kind, const model::SystemParams& params,
                       const model::ChannelDraw& draw, const RelayBatteryState& battery);

// Post-slot battery transition for the DF scheme: the selected relay keeps
// min(p_s - gamma g_si / g_id, cap) clamped at zero, every other relay
// accumulates min(p_s + eta gamma g_si, cap).  `selected` of nullopt updates
// all relays as unselected.
void battery_update_df(RelayBatteryState& state, std::optional<int> selected,
                       const model::SystemParams& params, const model::ChannelDraw& draw);

// AF transition: selected relay drains to zero, others accumulate as above.
void battery_update_af(RelayBatteryState& state, std::optional<int> selected,
                       const model::SystemParams& params, const model::ChannelDraw& draw);

struct TimerOutcome {
    std::optional<int> winner;
    bool collided = false;
};

// Distributed contention: relay i fires after timer_constant / metric[i].
// The earliest timer wins unless the runner-up is within collision_window.
TimerOutcome timer_selection(const std::vector<double>& metrics, double timer_constant,
                             double collision_window);

// Selection metric of the OPS rule: g_si g_id / (1 + eta g_id).
double ops_metric(double eta, double g_si, double g_id);

}  // namespace ehrelay::schemes

#endif
