#include "ggsum/distributions.hpp"

#include <cmath>
#include <string>

#include "ggsum/errors.hpp"
#include "ggsum/specfun.hpp"

namespace ggsum {

namespace sf = specfun;

void GammaParams::validate() const {
  if (!(shape > 0.0) || !std::isfinite(shape))
    throw ValidationError("GammaParams: shape must be positive");
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw ValidationError("GammaParams: scale must be positive");
}

void GGParams::validate() const {
  if (!(k > 0.0) || !std::isfinite(k))
    throw ValidationError("GGParams: k must be positive");
  if (!(m > 0.0) || !std::isfinite(m))
    throw ValidationError("GGParams: m must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega))
    throw ValidationError("GGParams: omega must be positive");
}

double gamma_pdf(const GammaParams& p, double x) {
  p.validate();
  if (std::isnan(x) || x < 0.0)
    throw DomainError("gamma_pdf: argument must be nonnegative");
  if (x == 0.0) {
    if (p.shape > 1.0) return 0.0;
    if (p.shape == 1.0) return 1.0 / p.scale;
    throw DomainError("gamma_pdf: density diverges at 0 for shape < 1");
  }
  const double t = x / p.scale;
  return std::exp((p.shape - 1.0) * std::log(t) - t - sf::ln_gamma(p.shape)) / p.scale;
}

double gg_log_pdf(const GGParams& p, double x) {
  p.validate();
  if (!(x > 0.0)) throw DomainError("gg_log_pdf: argument must be positive");
  const double c = 0.5 * (p.k + p.m);
  const double xi = p.rate();
  const double z = 2.0 * std::sqrt(xi * x);
  const double nu = std::abs(p.k - p.m);
  return std::log(2.0) + c * std::log(xi) + (c - 1.0) * std::log(x) -
         sf::ln_gamma(p.k) - sf::ln_gamma(p.m) + sf::bessel_k_log(nu, z);
}

double gg_pdf(const GGParams& p, double x) {
  p.validate();
  if (std::isnan(x) || x < 0.0)
    throw DomainError("gg_pdf: argument must be nonnegative");
  if (x == 0.0) {
    const double lo = std::min(p.k, p.m);
    const double hi = std::max(p.k, p.m);
    if (lo > 1.0) return 0.0;
    if (lo == 1.0 && hi > 1.0) return hi / ((hi - 1.0) * p.omega);
    // diverges like x^(lo-1), logarithmically when k = m = 1
    throw DomainError(
        "gg_pdf: density diverges at 0 (integrable singularity of exponent " +
        std::to_string(lo - 1.0) + "); evaluate at x > 0");
  }
  return std::exp(gg_log_pdf(p, x));
}

double gg_moment(const GGParams& p, double n) {
  p.validate();
  if (std::isnan(n) || n < 0.0)
    throw DomainError("gg_moment: order must be nonnegative");
  if (n == 0.0) return 1.0;
  const double xi = p.rate();
  return std::exp(-n * std::log(xi) + sf::ln_gamma(p.k + n) - sf::ln_gamma(p.k) +
                  sf::ln_gamma(p.m + n) - sf::ln_gamma(p.m));
}

namespace {

// Truncation point beyond which the law keeps less than tail_mass_tol of its
// mass, from the Markov bound P(X > T) <= E[X^4] / T^4.
double tail_cutoff(const GGParams& p, const QuadSpec& q) {
  const double m4 = gg_moment(p, 4.0);
  const double t = std::pow(m4 / q.tail_mass_tol, 0.25);
  return std::max(t, 16.0 * p.omega);
}

double integrate_against_pdf(const std::function<double(double)>& kernel,
                             const GGParams& p, const QuadSpec& q,
                             double upper, bool extend_tail) {
  auto f = [&](double x) { return kernel(x) * std::exp(gg_log_pdf(p, x)); };
  const double floor = p.omega * 1e-8;
  double total = quad::integrate_ladder(f, upper, floor, q);
  if (!extend_tail) return total;

  // geometric extension until two consecutive blocks stop mattering
  double edge = upper;
  int quiet = 0;
  for (int i = 0; i < 48 && quiet < 2; ++i) {
    const double block = quad::integrate(f, edge, 2.0 * edge, q);
    total += block;
    edge *= 2.0;
    if (std::abs(block) <= 0.5 * std::max(q.abs_tol, q.rel_tol * std::abs(total)))
      ++quiet;
    else
      quiet = 0;
  }
  if (quiet < 2)
    throw AccuracyError("expect_under_gg: tail did not settle", std::abs(total));
  return total;
}

}  // namespace

double gg_cdf(const GGParams& p, double x, const QuadSpec& q) {
  p.validate();
  q.validate();
  if (std::isnan(x) || x < 0.0)
    throw DomainError("gg_cdf: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  const double upper = std::min(x, tail_cutoff(p, q));
  const double v = integrate_against_pdf([](double) { return 1.0; }, p, q,
                                         upper, false);
  return std::min(1.0, std::max(0.0, v));
}

double expect_under_gg(const std::function<double(double)>& kernel,
                       const GGParams& p, const QuadSpec& q) {
  p.validate();
  q.validate();
  return integrate_against_pdf(kernel, p, q, tail_cutoff(p, q), true);
}

double gamma_sample(const GammaParams& p, Philox4x32& rng) {
  p.validate();
  if (p.shape < 1.0) {
    const double g = gamma_sample({p.shape + 1.0, 1.0}, rng);
    const double u = rng.next_unit();
    return p.scale * g * std::exp(std::log(u) / p.shape);
  }
  const double d = p.shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double z, v;
    do {
      z = rng.next_normal();
      v = 1.0 + c * z;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.next_unit();
    const double z2 = z * z;
    if (u < 1.0 - 0.0331 * z2 * z2) return p.scale * d * v;
    if (std::log(u) < 0.5 * z2 + d * (1.0 - v + std::log(v)))
      return p.scale * d * v;
  }
}

double gg_sample(const GGParams& p, Philox4x32& rng) {
  p.validate();
  const double x = gamma_sample({p.k, 1.0 / p.k}, rng);
  const double y = gamma_sample({p.m, p.omega / p.m}, rng);
  return x * y;
}

}  // namespace ggsum
