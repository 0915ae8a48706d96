#include "ehrelay/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ehrelay {

double Rng::exponential(double mean) { return -mean * std::log1p(-uniform01()); }

namespace model {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double x) {
    if (!(x > 0.0))
        throw std::domain_error("linear_to_db: argument must be positive, got " +
                                std::to_string(x));
    return 10.0 * std::log10(x);
}

SystemParams SystemParams::symmetric(double gamma_linear, double eta, double rate, int n_relays,
                                     double sigma2, double gamma_b_max_linear) {
    SystemParams p;
    p.gamma = gamma_linear;
    p.eta = eta;
    p.rate = rate;
    p.n_relays = n_relays;
    p.sigma_si2.assign(static_cast<std::size_t>(std::max(n_relays, 0)), sigma2);
    p.sigma_id2 = p.sigma_si2;
    p.gamma_b_max = gamma_b_max_linear;
    return p;
}

SystemParams SystemParams::defaults() {
    return symmetric(db_to_linear(15.0), 0.5, 1.0, 6, 1.0, db_to_linear(30.0));
}

void SystemParams::validate() const {
    if (!(gamma > 0.0)) throw std::invalid_argument("SystemParams: gamma must be > 0");
    if (!(eta > 0.0) || eta > 1.0)
        throw std::invalid_argument("SystemParams: eta must be in (0, 1]");
    if (!(rate > 0.0)) throw std::invalid_argument("SystemParams: rate must be > 0");
    if (n_relays < 1) throw std::invalid_argument("SystemParams: n_relays must be >= 1");
    if (sigma_si2.size() != static_cast<std::size_t>(n_relays) ||
        sigma_id2.size() != static_cast<std::size_t>(n_relays))
        throw std::invalid_argument("SystemParams: sigma vectors must have n_relays entries");
    for (double s : sigma_si2)
        if (!(s > 0.0)) throw std::invalid_argument("SystemParams: sigma_si2 entries must be > 0");
    for (double s : sigma_id2)
        if (!(s > 0.0)) throw std::invalid_argument("SystemParams: sigma_id2 entries must be > 0");
    if (gamma_b_max < 0.0)
        throw std::invalid_argument("SystemParams: gamma_b_max must be >= 0");
}

DerivedThresholds derive_thresholds(const SystemParams& params) {
    const double rate_term = std::exp2(2.0 * params.rate) - 1.0;
    DerivedThresholds t;
    // beta and delta derived from alpha so that alpha*eta == beta and
    // 2*delta*eta == beta hold bit-exactly.
    t.alpha = 2.0 * rate_term / (params.gamma * params.eta);
    t.beta = t.alpha * params.eta;
    t.delta = 0.5 * t.alpha;
    return t;
}

void draw_channels(const SystemParams& params, Rng& rng, ChannelDraw& out) {
    const auto n = static_cast<std::size_t>(params.n_relays);
    out.g_si.resize(n);
    out.g_id.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.g_si[i] = rng.exponential(params.sigma_si2[i]);
        out.g_id[i] = rng.exponential(params.sigma_id2[i]);
    }
}

ChannelDraw draw_channels(const SystemParams& params, Rng& rng) {
    ChannelDraw draw;
    draw_channels(params, rng, draw);
    return draw;
}

}  // namespace model
}  // namespace ehrelay
