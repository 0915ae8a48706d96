#include "ehrelay/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ehrelay/quadrature.hpp"

namespace ehrelay::specfun {

namespace {

[[noreturn]] void domain_fail(const char* fn, double x) {
    throw std::domain_error(std::string(fn) + ": argument must be positive, got " +
                            std::to_string(x));
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Power series around 0: E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!).
double e1_series(double x) {
    double sum = -kEulerGamma - std::log(x);
    double term = 1.0;
    for (int k = 1; k < 64; ++k) {
        term *= -x / k;
        const double contrib = -term / k;
        sum += contrib;
        if (std::fabs(contrib) < kEps * std::fabs(sum)) break;
    }
    return sum;
}

// Modified Lentz evaluation of the continued fraction
//   E_n(x) = exp(-x) / (x + n - 1*n / (x + n + 2 - 2*(n+1) / (x + n + 4 - ...))).
double en_fraction(int n, double x) {
    const double tiny = 1e-300;
    double b = x + n;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 400; ++k) {
        const double a = -static_cast<double>(k) * (n + k - 1.0);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double delta = c * d;
        h *= delta;
        if (std::fabs(delta - 1.0) < 4.0 * kEps) break;
    }
    return std::exp(-x) * h;
}

}  // namespace

void SeriesControl::validate() const {
    if (max_terms < 2) throw std::invalid_argument("SeriesControl: max_terms must be >= 2");
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
        throw std::invalid_argument("SeriesControl: rel_tol must be in (0, 1)");
}

double exp_integral_e1(double x) {
    if (!(x > 0.0)) domain_fail("exp_integral_e1", x);
    if (x >= 700.0) return 0.0;  // below the double underflow floor
    return x < 1.0 ? e1_series(x) : en_fraction(1, x);
}

double exp_integral_en(int n, double x) {
    if (n < 1) throw std::domain_error("exp_integral_en: order must be >= 1");
    if (!(x > 0.0)) domain_fail("exp_integral_en", x);
    if (n == 1) return exp_integral_e1(x);
    if (x >= 700.0) return 0.0;
    if (x > 1.0) return en_fraction(n, x);
    // Upward recurrence from E1; unconditionally stable for x <= 1.
    double e = e1_series(x);
    const double ex = std::exp(-x);
    for (int k = 1; k < n; ++k) e = (ex - x * e) / k;
    return e;
}

double bessel_k1(double x) {
    if (!(x > 0.0)) domain_fail("bessel_k1", x);
    if (x >= 700.0) return 0.0;
    if (x <= 2.0) {
        // K1(x) = ln(x/2) I1(x) + 1/x - (x/4) sum_k [psi(k+1)+psi(k+2)] q^k / (k! (k+1)!),
        // q = x^2/4.  Both sums converge in a few terms on (0, 2].
        const double q = 0.25 * x * x;
        double factor = 1.0;  // q^k / (k! (k+1)!)
        double psi_a = -kEulerGamma;
        double psi_b = 1.0 - kEulerGamma;
        double i1 = 1.0;
        double s = psi_a + psi_b;
        for (int k = 1; k < 40; ++k) {
            factor *= q / (k * (k + 1.0));
            psi_a += 1.0 / k;
            psi_b += 1.0 / (k + 1.0);
            i1 += factor;
            const double ds = (psi_a + psi_b) * factor;
            s += ds;
            if (std::fabs(ds) < kEps * std::fabs(s) && factor < kEps * i1) break;
        }
        i1 *= 0.5 * x;
        return std::log(0.5 * x) * i1 + 1.0 / x - 0.25 * x * s;
    }
    // Steed's continued fraction for K_mu with mu = 0, then the recurrence
    // K1 = K0 (x + 1/2 - h) / x.
    const double a1 = 0.25;
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    double a = -a1;
    double q = a1, c = a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    h = a1 * h;
    const double k0 = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x) / s;
    return k0 * (x + 0.5 - h) / x;
}

double quad_tail_product(double beta, double sigma_si2, double alpha_over_sigma_id2) {
    if (!(sigma_si2 > 0.0)) domain_fail("quad_tail_product: sigma_si2", sigma_si2);
    if (beta < 0.0 || alpha_over_sigma_id2 < 0.0 || !std::isfinite(beta) ||
        !std::isfinite(alpha_over_sigma_id2))
        throw std::domain_error("quad_tail_product: beta and alpha term must be finite and >= 0");

    const double b = beta / sigma_si2;
    const double c = alpha_over_sigma_id2 / sigma_si2;
    if (c == 0.0) return std::exp(-b);

    // integrand exp(-u - c/u); peak at max(b, sqrt(c)).  Truncate where the
    // tail is below ~1e-26 of the peak mass.
    const double u_star = std::max(b, std::sqrt(c));
    const double u_hi = u_star + c / u_star + 60.0;
    const double lo = std::max(b, 1e-300);
    const double value = quadrature::integrate(
        [c](double u) { return std::exp(-u - c / u); }, lo, u_hi, 1e-13, 1e-14);
    return std::clamp(value, 0.0, 1.0);
}

SeriesResult phi_series(double beta, double sigma_si2, double sigma_id2, double alpha,
                        const SeriesControl& ctl) {
    ctl.validate();
    if (!(sigma_si2 > 0.0)) domain_fail("phi_series: sigma_si2", sigma_si2);
    if (!(sigma_id2 > 0.0)) domain_fail("phi_series: sigma_id2", sigma_id2);
    if (beta < 0.0 || alpha < 0.0)
        throw std::domain_error("phi_series: beta and alpha must be >= 0");

    if (alpha == 0.0) return {std::exp(-beta / sigma_si2), true, 1};
    if (beta == 0.0) return {0.0, false, 0};  // expansion needs beta > 0 (E1 pole)

    const double b = beta / sigma_si2;
    const double coeff = alpha / sigma_id2;  // expansion parameter per series index
    double sum = std::exp(-b);
    double factor = 1.0;          // coeff^u / u!
    double beta_pow = 1.0;        // beta^{1-u}
    double sign = 1.0;
    double prev_abs = std::fabs(sum);
    int growth_streak = 0;

    for (int u = 1; u <= ctl.max_terms; ++u) {
        sign = -sign;
        factor *= coeff / u;
        if (u > 1) beta_pow /= beta;
        // Phi_u = int_beta^inf x^{-u} exp(-x/s) dx = beta^{1-u} E_u(beta/s).
        const double phi_u = beta_pow * exp_integral_en(u, b);
        const double term = sign * factor * phi_u / sigma_si2;
        if (!std::isfinite(term)) return {sum, false, u};
        sum += term;

        const double mag = std::fabs(term);
        if (mag <= ctl.rel_tol * std::fabs(sum)) return {sum, true, u};
        growth_streak = mag > prev_abs ? growth_streak + 1 : 0;
        if (growth_streak >= 3) return {sum, false, u};
        prev_abs = mag;
    }
    return {sum, false, ctl.max_terms};
}

}  // namespace ehrelay::specfun
