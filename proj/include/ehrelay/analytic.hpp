#ifndef EHRELAY_ANALYTIC_HPP
#define EHRELAY_ANALYTIC_HPP

#include <span>
#include <string>
#include <utility>

#include "ehrelay/model.hpp"
#include "ehrelay/schemes.hpp"
#include "ehrelay/specfun.hpp"

namespace ehrelay::analytic {

enum class Method { series, quadrature, bessel_closed_form, asymptotic };

std::string method_name(Method m);

struct OutageValue {
    double p_out = 0.0;
    Method method = Method::quadrature;
    bool converged = true;
};

// EPS-RS outage as the product over relays of 1 - Phi_i with Phi_i by
// adaptive quadrature; the ground-truth route.
OutageValue outage_eps_quadrature(const model::SystemParams& params);

// EPS-RS outage through the Maclaurin series form of Phi_i.  `converged` is
// false if any relay's series failed to settle; the value is then untrusted.
OutageValue outage_eps_series(const model::SystemParams& params,
                              const specfun::SeriesControl& ctl = {});

// Series evaluation with automatic quadrature fallback; the method field
// records which route produced the number.
OutageValue outage_eps(const model::SystemParams& params, const specfun::SeriesControl& ctl = {});

// TPS-RS outage at a fixed power-splitting ratio, by quadrature on the
// per-relay tail product with thresholds (2^{2R}-1)/((1-rho) gamma) and
// (2^{2R}-1)/(rho eta gamma).  rho of 0 or 1 gives certain outage.
OutageValue outage_tps_quadrature(const model::SystemParams& params, double rho);

// OPS-RS outage in closed form:
// prod_i [ 1 - (2 sqrt(delta)/(sigma_si sigma_id)) exp(-delta eta / sigma_si^2)
//          K1(2 sqrt(delta)/(sigma_si sigma_id)) ].
OutageValue outage_ops_closed(const model::SystemParams& params);

// High-SNR approximation prod_i c_i / gamma^N with c_i = 2(2^{2R}-1)/sigma_si^2
// for EPS and (2^{2R}-1)/sigma_si^2 for OPS.  Only EPS/OPS are defined.
OutageValue outage_asymptotic(const schemes::SchemeKind& kind, const model::SystemParams& params);

// Scheme-aware analytic outage used by the CLI: EPS via series+fallback, TPS
// via quadrature, OPS via the closed form.  Battery schemes have no analytic
// form and return nullopt at the call site (see cli).
OutageValue outage_analytic(const schemes::SchemeKind& kind, const model::SystemParams& params);

// Negated least-squares slope of log p_out against log gamma; the empirical
// diversity order.  Rejects fewer than two points, non-positive outage
// values, and repeated gamma values.
double diversity_fit(std::span<const std::pair<double, double>> outage_curve);

// Restricted moments of z = alpha / (sigma_id^2 x) over x > beta for the
// relay-0 channel pair; both vanish as gamma grows, which is what pins the
// high-SNR diversity behavior.
struct AppendixMoments {
    double e_z = 0.0;
    double e_z2 = 0.0;
    double var_z = 0.0;
};

AppendixMoments appendix_moments(const model::SystemParams& params);

}  // namespace ehrelay::analytic

#endif
