#ifndef EHRELAY_SPECFUN_HPP
#define EHRELAY_SPECFUN_HPP

namespace ehrelay::specfun {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Truncation control for the Maclaurin-expanded tail product.
struct SeriesControl {
    int max_terms = 48;      // truncation bound for the series index
    double rel_tol = 1e-12;  // stop once a term's relative contribution drops below this
    void validate() const;   // throws std::invalid_argument
};

struct SeriesResult {
    double value = 0.0;
    bool converged = false;
    int terms_used = 0;
};

// E1(x) = int_x^inf exp(-t)/t dt, x > 0.  Series below 1, continued fraction
// above; relative error well under 1e-12 on [1e-4, 20].
double exp_integral_e1(double x);

// Generalized exponential integral E_n(x) = x^{n-1} int_x^inf exp(-t) t^{-n} dt
// for n >= 1, x > 0.
double exp_integral_en(int n, double x);

// First-order modified Bessel function of the second kind, x > 0.
// Ascending series for x <= 2, Steed continued fraction above.
double bessel_k1(double x);

// Phi(beta, s, A) = (1/s) int_beta^inf exp(-x/s - A/x) dx, the probability
// that an exponential(s) draw exceeds beta while a paired exponential clears
// a 1/x threshold.  A is alpha/sigma_id2.  Absolute error <= 1e-10.
double quad_tail_product(double beta, double sigma_si2, double alpha_over_sigma_id2);

// Same quantity via the Maclaurin expansion of exp(-alpha/(sigma_id2 x)).
// Non-convergence (terms growing three times in a row, or a non-finite term)
// is reported through the flag; callers fall back to quad_tail_product.
SeriesResult phi_series(double beta, double sigma_si2, double sigma_id2, double alpha,
                        const SeriesControl& ctl = {});

}  // namespace ehrelay::specfun

#endif
