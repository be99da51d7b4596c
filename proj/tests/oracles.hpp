#ifndef GGSUM_TESTS_ORACLES_HPP
#define GGSUM_TESTS_ORACLES_HPP

#include <functional>

// Brute-force reference implementations used only by tests.  Everything here
// goes through defining integrals on fine fixed grids, independent of the
// production evaluation paths.
namespace oracle {

/// Composite Simpson rule with n panels (n made even internally).
double simpson(const std::function<double(double)>& f, double a, double b,
               int n);

/// ln K_nu(x) from the integral representation
/// K_nu(x) = integral_0^inf exp(-x cosh t) cosh(nu t) dt, peak-shifted so the
/// quadrature works in a safe exponent range for any order.
double log_bessel_k(double nu, double x);
double bessel_k(double nu, double x);

/// erfc from the Gaussian tail integral.
double erfc(double x);

/// Regularized lower incomplete gamma from the substitution u = t^a, which
/// removes the endpoint singularity.
double reg_lower_inc_gamma(double a, double x);

}  // namespace oracle

#endif
