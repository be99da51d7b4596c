#ifndef GGSUM_SPECFUN_HPP
#define GGSUM_SPECFUN_HPP

namespace ggsum::specfun {

/// Accuracy contract shared by all special-function kernels.  Every
/// evaluation either meets rel_tol or throws; precision is never lost
/// silently.
struct SpecFunAccuracy {
  double rel_tol = 1e-12;     ///< relative error target
  double max_order = 2000.0;  ///< largest supported Bessel order
  double max_arg = 700.0;     ///< largest argument of the unscaled Bessel form
};

inline constexpr SpecFunAccuracy kAccuracy{};

/// ln Gamma(x) for x > 0.
double ln_gamma(double x);

/// Gamma(x) for x > 0.
double gamma_fn(double x);

/// Modified Bessel function of the second kind K_nu(x), real order
/// nu in [0, max_order].  The unscaled form requires x in (0, max_arg] and
/// a result representable in double; callers needing the far tail or large
/// orders use the scaled or log forms, which accept any x > 0.
double bessel_k(double nu, double x);

/// exp(x) * K_nu(x).
double bessel_k_scaled(double nu, double x);

/// ln K_nu(x).
double bessel_k_log(double nu, double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a),
/// a > 0, x >= 0.  Monotone nondecreasing in x, P(a, 0) = 0, P(a, inf) = 1.
double reg_lower_inc_gamma(double a, double x);

/// Complementary error function; erfc(x) = 2 Q(sqrt(2) x).
double erfc(double x);

}  // namespace ggsum::specfun

#endif
