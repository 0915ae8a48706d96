#include "ehrelay/mc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ehrelay::mc {

namespace {

constexpr std::uint64_t kMemorylessBatches = 512;
constexpr std::uint64_t kChainStreamBase = 1ULL << 32;  // keeps chain streams off batch streams

// Linear-SNR selection metric: capacity < R iff the best metric is below
// 2^{2R} - 1, so the hot loop never takes a log.
double slot_metric(const schemes::SchemeKind& kind, const model::SystemParams& params,
                   double g_si, double g_id, double gamma_s) {
    using Family = schemes::SchemeKind::Family;
    switch (kind.family) {
        case Family::eps:
        case Family::tps: {
            const double rho = kind.family == Family::eps ? 0.5 : kind.tps_rho;
            return std::min((1.0 - rho) * params.gamma * g_si,
                            rho * params.gamma * params.eta * g_si * g_id);
        }
        case Family::ops:
            return params.gamma * params.eta * schemes::ops_metric(params.eta, g_si, g_id);
        case Family::ehb_df: {
            if (g_si <= 0.0) return 0.0;
            const double rho =
                schemes::rho_df_ehb(params.gamma, gamma_s, g_si, g_id, params.eta);
            return std::min((1.0 - rho) * params.gamma * g_si,
                            rho * params.gamma * params.eta * g_si * g_id + gamma_s * g_id);
        }
        case Family::ehb_af: {
            if (g_si <= 0.0 || g_id <= 0.0) return 0.0;
            const double a = gamma_s / (params.gamma * g_si);
            const double rho = schemes::rho_af_ehb(params.eta, a, g_id);
            const double den = rho * params.eta + a;
            if (den <= 0.0) return 0.0;
            const double f = 1.0 / den + g_id / (1.0 - rho);
            return params.gamma * g_si * g_id / f;
        }
    }
    return 0.0;
}

std::uint64_t run_memoryless_batch(const schemes::SchemeKind& kind,
                                   const model::SystemParams& params, std::uint64_t seed,
                                   std::uint64_t stream, std::uint64_t trials,
                                   double rate_term) {
    Rng rng(seed, stream);
    const auto n = static_cast<std::size_t>(params.n_relays);
    std::uint64_t outages = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double g_si = rng.exponential(params.sigma_si2[i]);
            const double g_id = rng.exponential(params.sigma_id2[i]);
            const double m = slot_metric(kind, params, g_si, g_id, 0.0);
            if (m > best) best = m;
        }
        if (best < rate_term) ++outages;
    }
    return outages;
}

std::uint64_t run_battery_chain(const schemes::SchemeKind& kind,
                                const model::SystemParams& params, const TrialConfig& cfg,
                                std::uint64_t chain, std::uint64_t counted_slots,
                                double rate_term) {
    Rng rng(cfg.seed, kChainStreamBase + chain);
    const auto n = static_cast<std::size_t>(params.n_relays);
    auto battery = schemes::RelayBatteryState::zeros(params.n_relays);
    model::ChannelDraw draw;
    std::uint64_t outages = 0;
    const std::uint64_t total = cfg.warmup + counted_slots;
    for (std::uint64_t slot = 0; slot < total; ++slot) {
        model::draw_channels(params, rng, draw);
        int best_idx = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m =
                slot_metric(kind, params, draw.g_si[i], draw.g_id[i], battery.p_s[i]);
            if (m > best) {
                best = m;
                best_idx = static_cast<int>(i);
            }
        }
        if (slot >= cfg.warmup && best < rate_term) ++outages;
        if (kind.family == schemes::SchemeKind::Family::ehb_df)
            schemes::battery_update_df(battery, best_idx, params, draw);
        else
            schemes::battery_update_af(battery, best_idx, params, draw);
    }
    return outages;
}

OutageEstimate finish_estimate(const schemes::SchemeKind& kind, const TrialConfig& cfg,
                               std::uint64_t outages, std::uint64_t trials) {
    OutageEstimate e;
    e.scheme = kind;
    e.trials_used = trials;
    e.p_hat = static_cast<double>(outages) / static_cast<double>(trials);
    const double z = normal_quantile_two_sided(cfg.confidence);
    const double se = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(trials));
    e.ci_low = std::max(0.0, e.p_hat - z * se);
    e.ci_high = std::min(1.0, e.p_hat + z * se);
    return e;
}

OutageEstimate estimate_impl(const schemes::SchemeKind& kind, const model::SystemParams& params,
                             const TrialConfig& cfg, bool parallel) {
    cfg.validate();
    const double rate_term = std::exp2(2.0 * params.rate) - 1.0;

    if (!kind.battery_backed()) {
        const std::uint64_t n_batches = std::min<std::uint64_t>(kMemorylessBatches, cfg.trials);
        const std::uint64_t base = cfg.trials / n_batches;
        const std::uint64_t rem = cfg.trials % n_batches;
        std::vector<std::uint64_t> counts(n_batches, 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_batches); ++b) {
            const std::uint64_t trials_b = base + (static_cast<std::uint64_t>(b) < rem ? 1 : 0);
            counts[b] = run_memoryless_batch(kind, params, cfg.seed,
                                             static_cast<std::uint64_t>(b), trials_b, rate_term);
        }
        std::uint64_t outages = 0;
        for (std::uint64_t c : counts) outages += c;
        return finish_estimate(kind, cfg, outages, cfg.trials);
    }

    const auto chains = static_cast<std::uint64_t>(cfg.chains);
    const std::uint64_t base = cfg.trials / chains;
    const std::uint64_t rem = cfg.trials % chains;
    std::vector<std::uint64_t> counts(chains, 0);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chains); ++c) {
        const std::uint64_t slots_c = base + (static_cast<std::uint64_t>(c) < rem ? 1 : 0);
        counts[c] =
            run_battery_chain(kind, params, cfg, static_cast<std::uint64_t>(c), slots_c, rate_term);
    }
    std::uint64_t outages = 0;
    for (std::uint64_t c : counts) outages += c;
    return finish_estimate(kind, cfg, outages, cfg.trials);
}

}  // namespace

void TrialConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("TrialConfig: trials must be >= 1");
    if (chains < 1) throw std::invalid_argument("TrialConfig: chains must be >= 1");
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw std::invalid_argument("TrialConfig: confidence must be in (0, 1)");
}

double normal_quantile_two_sided(double confidence) {
    if (!(confidence > 0.0) || !(confidence < 1.0))
        throw std::invalid_argument("normal_quantile_two_sided: confidence must be in (0, 1)");
    const double p = 1.0 - 0.5 * (1.0 - confidence);
    // Safeguarded Newton on Phi(x) = p; no coefficient tables needed.
    double lo = -40.0, hi = 40.0, x = 0.0;
    for (int it = 0; it < 200; ++it) {
        const double err = 0.5 * std::erfc(-x * M_SQRT1_2) - p;
        (err > 0.0 ? hi : lo) = x;
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        double next = x - err / pdf;
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-15 * std::max(1.0, std::fabs(x))) return next;
        x = next;
    }
    return x;
}

OutageEstimate estimate_outage(const schemes::SchemeKind& kind, const model::SystemParams& params,
                               const TrialConfig& cfg) {
    return estimate_impl(kind, params, cfg, true);
}

OutageEstimate estimate_outage_serial(const schemes::SchemeKind& kind,
                                      const model::SystemParams& params, const TrialConfig& cfg) {
    return estimate_impl(kind, params, cfg, false);
}

void validate_axis_values(const schemes::SchemeKind& kind, SweepAxis axis,
                          std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("sweep: non-finite axis value");
        switch (axis) {
            case SweepAxis::gamma_db: break;
            case SweepAxis::eta:
                if (!(v > 0.0) || v > 1.0)
                    throw std::invalid_argument("sweep: eta values must be in (0, 1]");
                break;
            case SweepAxis::rate:
                if (!(v > 0.0)) throw std::invalid_argument("sweep: rate values must be > 0");
                break;
            case SweepAxis::n_relays:
                if (v < 1.0 || v != std::floor(v) || v > 4096.0)
                    throw std::invalid_argument("sweep: n_relays values must be integers >= 1");
                break;
            case SweepAxis::rho_fixed:
                if (kind.family != schemes::SchemeKind::Family::tps)
                    throw std::invalid_argument("sweep: rho_fixed axis applies to tps only");
                if (v < 0.0 || v > 1.0)
                    throw std::invalid_argument("sweep: rho values must be in [0, 1]");
                break;
        }
    }
}

void apply_axis(schemes::SchemeKind& kind, model::SystemParams& params, SweepAxis axis,
                double value) {
    switch (axis) {
        case SweepAxis::gamma_db: params.gamma = model::db_to_linear(value); break;
        case SweepAxis::eta: params.eta = value; break;
        case SweepAxis::rate: params.rate = value; break;
        case SweepAxis::n_relays: {
            const int n = static_cast<int>(value);
            params.sigma_si2.resize(static_cast<std::size_t>(n), params.sigma_si2.front());
            params.sigma_id2.resize(static_cast<std::size_t>(n), params.sigma_id2.front());
            params.n_relays = n;
            break;
        }
        case SweepAxis::rho_fixed: kind.tps_rho = value; break;
    }
}

std::vector<SweepPoint> sweep(const schemes::SchemeKind& kind, const model::SystemParams& params,
                              SweepAxis axis, std::span<const double> values,
                              const TrialConfig& cfg) {
    cfg.validate();
    validate_axis_values(kind, axis, values);

    std::vector<SweepPoint> out;
    out.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        schemes::SchemeKind k = kind;
        model::SystemParams p = params;
        apply_axis(k, p, axis, values[i]);
        TrialConfig point_cfg = cfg;
        point_cfg.seed = mix_seed(cfg.seed, i);
        out.push_back({values[i], estimate_outage(k, p, point_cfg)});
    }
    return out;
}

}  // namespace ehrelay::mc
