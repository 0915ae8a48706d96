#include "ehrelay/oracles.hpp"

#include <cmath>
#include <stdexcept>

#include "ehrelay/quadrature.hpp"

namespace ehrelay::oracles {

double e1_by_quadrature(double x) {
    if (!(x > 0.0)) throw std::domain_error("e1_by_quadrature: x must be > 0");
    // t = e^u flattens the 1/t factor: E1(x) = int_{ln x}^{ln T} exp(-e^u) du.
    const double t_hi = x + 60.0;
    auto f = [](double u) { return std::exp(-std::exp(u)); };
    const double rough =
        quadrature::integrate(f, std::log(x), std::log(t_hi), 1e-8, 1e-6, 20);
    return quadrature::integrate(f, std::log(x), std::log(t_hi),
                                 std::max(1e-300, 1e-13 * rough), 1e-14);
}

double k1_by_quadrature(double x) {
    if (!(x > 0.0)) throw std::domain_error("k1_by_quadrature: x must be > 0");
    const double t_hi = std::acosh(1.0 + 90.0 / x);
    auto f = [x](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(t); };
    const double rough = quadrature::integrate(f, 0.0, t_hi, 1e-8, 1e-6, 20);
    return quadrature::integrate(f, 0.0, t_hi, std::max(1e-300, 1e-13 * rough), 1e-14);
}

}  // namespace ehrelay::oracles
