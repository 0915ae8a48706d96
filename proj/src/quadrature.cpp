#include "ehrelay/quadrature.hpp"

namespace ehrelay::quadrature {

namespace {

// Evaluates P_n(x) and its derivative by the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussRule::GaussRule() {
    constexpr int n = kGaussOrder;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-angle initial guess, then Newton on P_n(x).
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            legendre(n, x, p, dp);
            const double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        legendre(n, x, p, dp);
        node[i] = -x;
        node[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weight[i] = w;
        weight[n - 1 - i] = w;
    }
}

const GaussRule& gauss_rule() {
    static const GaussRule rule;
    return rule;
}

}  // namespace ehrelay::quadrature
