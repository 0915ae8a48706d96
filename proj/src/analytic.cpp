#include "ehrelay/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ehrelay::analytic {

namespace {

double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

}  // namespace

std::string method_name(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::quadrature: return "quadrature";
        case Method::bessel_closed_form: return "bessel_closed_form";
        case Method::asymptotic: return "asymptotic";
    }
    return "?";
}

OutageValue outage_eps_quadrature(const model::SystemParams& params) {
    const auto t = model::derive_thresholds(params);
    double p = 1.0;
    for (int i = 0; i < params.n_relays; ++i) {
        const double phi = specfun::quad_tail_product(t.beta, params.sigma_si2[i],
                                                      t.alpha / params.sigma_id2[i]);
        p *= 1.0 - phi;
    }
    return {clamp01(p), Method::quadrature, true};
}

OutageValue outage_eps_series(const model::SystemParams& params,
                              const specfun::SeriesControl& ctl) {
    const auto t = model::derive_thresholds(params);
    double p = 1.0;
    bool converged = true;
    for (int i = 0; i < params.n_relays; ++i) {
        const auto phi =
            specfun::phi_series(t.beta, params.sigma_si2[i], params.sigma_id2[i], t.alpha, ctl);
        converged = converged && phi.converged;
        p *= 1.0 - phi.value;
    }
    return {clamp01(p), Method::series, converged};
}

OutageValue outage_eps(const model::SystemParams& params, const specfun::SeriesControl& ctl) {
    OutageValue v = outage_eps_series(params, ctl);
    if (!v.converged) {
        v = outage_eps_quadrature(params);
    }
    return v;
}

OutageValue outage_tps_quadrature(const model::SystemParams& params, double rho) {
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("outage_tps_quadrature: rho must be in [0, 1]");
    if (rho == 0.0 || rho == 1.0) return {1.0, Method::quadrature, true};
    const double rate_term = std::exp2(2.0 * params.rate) - 1.0;
    const double beta_rho = rate_term / ((1.0 - rho) * params.gamma);
    const double alpha_rho = rate_term / (rho * params.eta * params.gamma);
    double p = 1.0;
    for (int i = 0; i < params.n_relays; ++i) {
        const double phi = specfun::quad_tail_product(beta_rho, params.sigma_si2[i],
                                                      alpha_rho / params.sigma_id2[i]);
        p *= 1.0 - phi;
    }
    return {clamp01(p), Method::quadrature, true};
}

OutageValue outage_ops_closed(const model::SystemParams& params) {
    const auto t = model::derive_thresholds(params);
    double p = 1.0;
    for (int i = 0; i < params.n_relays; ++i) {
        const double arg =
            2.0 * std::sqrt(t.delta) / std::sqrt(params.sigma_si2[i] * params.sigma_id2[i]);
        const double q = 1.0 - arg * std::exp(-t.delta * params.eta / params.sigma_si2[i]) *
                                   specfun::bessel_k1(arg);
        p *= q;
    }
    return {clamp01(p), Method::bessel_closed_form, true};
}

OutageValue outage_asymptotic(const schemes::SchemeKind& kind,
                              const model::SystemParams& params) {
    const double rate_term = std::exp2(2.0 * params.rate) - 1.0;
    double scale = 0.0;
    switch (kind.family) {
        case schemes::SchemeKind::Family::eps: scale = 2.0 * rate_term; break;
        case schemes::SchemeKind::Family::ops: scale = rate_term; break;
        default:
            throw std::invalid_argument("outage_asymptotic: defined for eps and ops only");
    }
    double p = 1.0;
    for (int i = 0; i < params.n_relays; ++i) p *= scale / (params.sigma_si2[i] * params.gamma);
    return {p, Method::asymptotic, true};
}

OutageValue outage_analytic(const schemes::SchemeKind& kind, const model::SystemParams& params) {
    switch (kind.family) {
        case schemes::SchemeKind::Family::eps: return outage_eps(params);
        case schemes::SchemeKind::Family::tps: return outage_tps_quadrature(params, kind.tps_rho);
        case schemes::SchemeKind::Family::ops: return outage_ops_closed(params);
        default:
            throw std::invalid_argument("outage_analytic: no closed form for battery schemes");
    }
}

double diversity_fit(std::span<const std::pair<double, double>> outage_curve) {
    if (outage_curve.size() < 2)
        throw std::invalid_argument("diversity_fit: need at least two points");
    const std::size_t n = outage_curve.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto [gamma, p] = outage_curve[i];
        if (!(gamma > 0.0) || !(p > 0.0))
            throw std::invalid_argument("diversity_fit: gamma and p_out must be positive");
        for (std::size_t j = i + 1; j < n; ++j)
            if (outage_curve[j].first == gamma)
                throw std::invalid_argument("diversity_fit: gamma values must be distinct");
        mean_x += std::log(gamma);
        mean_y += std::log(p);
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [gamma, p] : outage_curve) {
        const double dx = std::log(gamma) - mean_x;
        sxx += dx * dx;
        sxy += dx * (std::log(p) - mean_y);
    }
    return -sxy / sxx;
}

AppendixMoments appendix_moments(const model::SystemParams& params) {
    const auto t = model::derive_thresholds(params);
    const double s = params.sigma_si2[0];
    const double sid2 = params.sigma_id2[0];
    const double b = t.beta / s;
    const double e1 = specfun::exp_integral_e1(b);
    AppendixMoments m;
    m.e_z = t.alpha / (s * sid2) * e1;
    m.e_z2 = t.alpha * t.alpha / (s * sid2 * sid2) *
             (std::exp(-b) / t.beta - e1 / s);
    m.var_z = m.e_z2 - m.e_z * m.e_z;
    return m;
}

}  // namespace ehrelay::analytic
