#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {

double log_cosh(double y) {
  const double a = std::abs(y);
  if (a > 30.0) return a - std::log(2.0) + std::log1p(std::exp(-2.0 * a));
  return std::log(std::cosh(y));
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b,
               int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

double log_bessel_k(double nu, double x) {
  if (!(x > 0.0) || nu < 0.0) throw std::invalid_argument("log_bessel_k oracle");
  // phi(t) = ln cosh(nu t) - x cosh t; locate the maximum, then integrate
  // exp(phi - phi*) over the region where it matters
  auto phi = [&](double t) { return log_cosh(nu * t) - x * std::cosh(t); };

  double t_peak = 0.0;
  if (nu * nu > x) {
    // solve nu tanh(nu t) = x sinh t by bisection
    auto dphi = [&](double t) { return nu * std::tanh(nu * t) - x * std::sinh(t); };
    double lo = 0.0, hi = std::asinh(nu / x) + 2.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (dphi(mid) > 0.0 ? lo : hi) = mid;
    }
    t_peak = 0.5 * (lo + hi);
  }
  const double phi_peak = phi(t_peak);

  double t_hi = t_peak + 1.0;
  while (phi(t_hi) > phi_peak - 120.0) t_hi += 1.0;

  const int n = 1 << 18;
  auto g = [&](double t) { return std::exp(phi(t) - phi_peak); };
  const double integral = simpson(g, 0.0, t_hi, n);
  return phi_peak + std::log(integral);
}

double bessel_k(double nu, double x) { return std::exp(log_bessel_k(nu, x)); }

double erfc(double x) {
  if (x < 0.0) return 2.0 - erfc(-x);
  // 2/sqrt(pi) * integral_x^inf exp(-t^2) dt, shifted to a safe exponent range
  const double width = 10.0;
  auto g = [&](double t) { return std::exp(-(t * t) + x * x); };
  const double integral = simpson(g, x, x + width, 1 << 18);
  return 2.0 / std::sqrt(M_PI) * std::exp(-x * x) * integral;
}

double reg_lower_inc_gamma(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw std::invalid_argument("reg gamma oracle");
  if (x == 0.0) return 0.0;
  // substitute t = v^10: the integrand becomes 10 v^(10a-1) exp(-v^10),
  // smooth at the origin whenever 10a is an integer (true on the test
  // grids), and exponent-shifted at its interior maximum for large shapes
  const double q = 10.0 * a - 1.0;
  const double vx = std::pow(x, 0.1);
  const double v_mode = std::min(std::pow(std::max(q, 1e-30) / 10.0, 0.1), vx);
  const double shift = q * std::log(v_mode) - std::pow(v_mode, 10.0);
  auto g = [&](double v) {
    if (v <= 0.0) return q == 0.0 ? std::exp(-shift) : 0.0;
    return std::exp(q * std::log(v) - std::pow(v, 10.0) - shift);
  };
  const double integral = simpson(g, 0.0, vx, 1 << 19) * 10.0;
  return integral * std::exp(shift - std::lgamma(a));
}

}  // namespace oracle
