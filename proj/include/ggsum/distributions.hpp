#ifndef GGSUM_DISTRIBUTIONS_HPP
#define GGSUM_DISTRIBUTIONS_HPP

#include <functional>

#include "ggsum/quadrature.hpp"
#include "ggsum/rng.hpp"

namespace ggsum {

/// Gamma law with density x^(shape-1) exp(-x/scale) / (scale^shape Gamma(shape)).
struct GammaParams {
  double shape;
  double scale;

  double mean() const { return shape * scale; }
  void validate() const;
};

/// Gamma-Gamma law: the product of independent Gamma(k, 1/k) and
/// Gamma(m, omega/m) factors.  k and m are the shaping parameters, omega the
/// mean; the distribution is symmetric under swapping k and m.
struct GGParams {
  double k;
  double m;
  double omega;

  double rate() const { return k * m / omega; }  // xi = k m / omega
  void validate() const;
};

double gamma_pdf(const GammaParams& p, double x);

/// Density of the GG law.  At x = 0 the analytic limit is returned when it is
/// finite (min(k,m) > 1, or min(k,m) = 1 with k != m); otherwise the density
/// diverges like x^(min(k,m)-1) (logarithmically for k = m = 1) and a domain
/// error is raised, leaving the integrable singularity to the quadrature.
double gg_pdf(const GGParams& p, double x);

/// ln of the GG density, x > 0.  Composed from ln Gamma and ln K_nu, so it
/// stays finite where the plain density would overflow or underflow.
double gg_log_pdf(const GGParams& p, double x);

/// Raw moment E[gamma^n] = xi^-n Gamma(k+n) Gamma(m+n) / (Gamma(k) Gamma(m)),
/// n >= 0 (not necessarily an integer).
double gg_moment(const GGParams& p, double n);

/// CDF by quadrature of the density over [0, x].
double gg_cdf(const GGParams& p, double x, const QuadSpec& q = {});

/// Integral of kernel(x) * pdf(x) over [0, inf).  The kernel must be bounded
/// and piecewise smooth; the endpoint singularity and the semi-infinite tail
/// are owned by the engine (truncation point from the Markov bound on the
/// fourth moment, then geometric extension until increments are negligible).
double expect_under_gg(const std::function<double(double)>& kernel,
                       const GGParams& p, const QuadSpec& q = {});

/// Gamma variate via the Marsaglia-Tsang squeeze method; shape < 1 uses the
/// boost G(shape+1) * U^(1/shape).
double gamma_sample(const GammaParams& p, Philox4x32& rng);

/// GG variate as the product of its two Gamma factors.
double gg_sample(const GGParams& p, Philox4x32& rng);

}  // namespace ggsum

#endif
