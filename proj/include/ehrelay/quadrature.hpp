#ifndef EHRELAY_QUADRATURE_HPP
#define EHRELAY_QUADRATURE_HPP

#include <cmath>
#include <cstddef>

namespace ehrelay::quadrature {

inline constexpr int kGaussOrder = 25;

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton iteration
// on the Legendre polynomial (no coefficient tables).
struct GaussRule {
    double node[kGaussOrder];
    double weight[kGaussOrder];
    GaussRule();
};

const GaussRule& gauss_rule();

template <class F>
double gauss_panel(F&& f, double a, double b) {
    const GaussRule& rule = gauss_rule();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < kGaussOrder; ++i) sum += rule.weight[i] * f(mid + half * rule.node[i]);
    return sum * half;
}

namespace detail {

template <class F>
double adapt(F& f, double a, double b, double whole, double tol, double rel_floor, int depth) {
    const double mid = 0.5 * (a + b);
    const double left = gauss_panel(f, a, mid);
    const double right = gauss_panel(f, mid, b);
    const double err = std::fabs(left + right - whole);
    if (err <= tol || err <= rel_floor || depth <= 0) return left + right;
    return adapt(f, a, mid, left, 0.5 * tol, rel_floor, depth - 1) +
           adapt(f, mid, b, right, 0.5 * tol, rel_floor, depth - 1);
}

}  // namespace detail

// Adaptive bisection on a fixed high-order Gauss panel. `abs_tol` is the
// absolute error target; `rel_tol` additionally stops refinement once the
// local panel disagreement is below rel_tol * |first whole-interval estimate|.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol, double rel_tol = 1e-14,
                 int max_depth = 48) {
    if (!(b > a)) return 0.0;
    const double whole = gauss_panel(f, a, b);
    const double rel_floor = rel_tol * std::fabs(whole);
    return detail::adapt(f, a, b, whole, abs_tol, rel_floor, max_depth);
}

}  // namespace ehrelay::quadrature

#endif
