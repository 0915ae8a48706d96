#ifndef EHRELAY_ORACLES_HPP
#define EHRELAY_ORACLES_HPP

namespace ehrelay::oracles {

// Quadrature evaluations of the special functions straight from their
// integral representations.  Deliberately independent of the series and
// continued-fraction paths in specfun, so agreement is a two-route check.

// int_x^inf exp(-t)/t dt via the substitution t = e^u.
double e1_by_quadrature(double x);

// int_0^inf exp(-x cosh t) cosh t dt, truncated where the integrand is
// negligible relative to its peak.
double k1_by_quadrature(double x);

}  // namespace ehrelay::oracles

#endif
