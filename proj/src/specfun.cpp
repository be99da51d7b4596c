#include "ggsum/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ggsum/errors.hpp"

// K_nu is evaluated with Temme's series for x < 2 and Steed's continued
// fraction (CF2) for x >= 2, both at a reduced order |mu| <= 1/2, followed by
// the stable upward recurrence K_{mu+i+1} = K_{mu+i-1} + (2(mu+i)/x) K_{mu+i}.
// The same scheme underlies the SLATEC/netlib K routines.  Orders are reduced
// symmetrically, so integer and non-integer nu share one code path.

namespace ggsum::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kMaxIter = 20000;
constexpr double kRescaleCeiling = 1e280;

[[noreturn]] void domain_fail(const std::string& msg) { throw DomainError(msg); }

// zeta(k) for k = 2..kZetaMax via direct summation plus an Euler-Maclaurin
// tail, accurate to ~1e-16 relative.
constexpr int kZetaMax = 64;

const std::array<double, kZetaMax + 1>& zeta_table() {
  static const std::array<double, kZetaMax + 1> table = [] {
    std::array<double, kZetaMax + 1> z{};
    const int n_direct = 100;
    for (int k = 2; k <= kZetaMax; ++k) {
      double s = 0.0;
      for (int n = n_direct - 1; n >= 1; --n) s += std::pow(double(n), -double(k));
      const double nk = std::pow(double(n_direct), -double(k));
      const double N = n_direct;
      s += nk * N / (k - 1.0) + 0.5 * nk + k * nk / (12.0 * N) -
           k * (k + 1.0) * (k + 2.0) * nk / (720.0 * N * N * N);
      z[k] = s;
    }
    return z;
  }();
  return table;
}

// ln(1/Gamma(1+mu)) = A(mu) + B(mu) with A odd and B even in mu, from the
// zeta expansion of ln Gamma.  Valid for |mu| <= 1/2.
double series_a_over_mu(double mu) {
  const auto& z = zeta_table();
  const double mu2 = mu * mu;
  double p = 1.0;
  double s = kEulerGamma;
  for (int k = 3; k <= kZetaMax; k += 2) {
    p *= mu2;
    const double t = z[k] * p / k;
    s += t;
    if (std::abs(t) < 1e-18 * std::abs(s)) break;
  }
  return s;
}

double series_b(double mu) {
  const auto& z = zeta_table();
  const double mu2 = mu * mu;
  double p = 1.0;
  double s = 0.0;
  for (int k = 2; k <= kZetaMax; k += 2) {
    p *= mu2;
    const double t = z[k] * p / k;
    s -= t;
    if (std::abs(t) < 1e-18 * (std::abs(s) + 1e-30)) break;
  }
  return s;
}

// Temme's auxiliary functions:
//   gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu)
//   gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2
// computed without cancellation via the odd/even split above.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl,
                  double& gammi) {
  const double aratio = series_a_over_mu(mu);
  const double a = mu * aratio;
  const double b = series_b(mu);
  const double eb = std::exp(b);
  gampl = eb * std::exp(a);   // 1/Gamma(1+mu)
  gammi = eb * std::exp(-a);  // 1/Gamma(1-mu)
  double sinhc;               // sinh(a)/a
  if (std::abs(a) < 1e-4) {
    const double a2 = a * a;
    sinhc = 1.0 + a2 / 6.0 * (1.0 + a2 / 20.0);
  } else {
    sinhc = std::sinh(a) / a;
  }
  gam1 = -eb * aratio * sinhc;
  gam2 = eb * std::cosh(a);
}

struct KPair {
  double kmu;   // K_mu   (exp(x)-scaled when from the continued fraction)
  double kmu1;  // K_{mu+1}
};

// Series about x = 0, |mu| <= 1/2, x < 2.  Returns unscaled values.
KPair temme_series(double mu, double x) {
  const double x2 = 0.5 * x;
  const double pimu = M_PI * mu;
  const double fact = (std::abs(pimu) < 1e-14) ? 1.0 : pimu / std::sin(pimu);
  const double d = -std::log(x2);
  const double e = mu * d;
  const double fact2 = (std::abs(e) < 1e-14) ? 1.0 : std::sinh(e) / e;
  double gam1, gam2, gampl, gammi;
  temme_gammas(mu, gam1, gam2, gampl, gammi);
  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  const double ee = std::exp(e);
  double p = 0.5 * ee / gampl;
  double q = 0.5 / (ee * gammi);
  double c = 1.0;
  const double x2sq = x2 * x2;
  double sum1 = p;
  const double mu2 = mu * mu;
  for (int i = 1; i <= kMaxIter; ++i) {
    ff = (i * ff + p + q) / (i * i - mu2);
    c *= x2sq / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    const double del1 = c * (p - i * ff);
    sum1 += del1;
    if (std::abs(del) < std::abs(sum) * 1e-17)
      return {sum, sum1 * 2.0 / x};
  }
  throw AccuracyError("bessel_k: small-argument series did not converge",
                      std::numeric_limits<double>::quiet_NaN());
}

// Steed's continued fraction, |mu| <= 1/2, x >= 2.  Returns exp(x)-scaled
// values.
KPair steed_cf2(double mu, double x) {
  const double mu2 = mu * mu;
  const double a1 = 0.25 - mu2;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-16) {
      h = a1 * h;
      const double kmu = std::sqrt(M_PI / (2.0 * x)) / s;
      const double kmu1 = kmu * (mu + x + 0.5 - h) / x;
      return {kmu, kmu1};
    }
  }
  throw AccuracyError("bessel_k: continued fraction did not converge",
                      std::numeric_limits<double>::quiet_NaN());
}

struct KCore {
  double value;      // K_nu * exp(-log_extra) * (exp_scaled ? exp(x) : 1)
  double log_extra;  // accumulated rescaling, >= 0
  bool exp_scaled;   // true when value carries an exp(x) factor
};

KCore bessel_k_core(double nu, double x) {
  if (std::isnan(nu) || std::isnan(x)) domain_fail("bessel_k: NaN argument");
  if (nu < 0.0) domain_fail("bessel_k: order must be nonnegative (pass |nu|)");
  if (nu > kAccuracy.max_order)
    domain_fail("bessel_k: order " + std::to_string(nu) + " exceeds supported maximum " +
                std::to_string(kAccuracy.max_order));
  if (!(x > 0.0)) domain_fail("bessel_k: argument must be positive");

  const int nl = int(nu + 0.5);
  const double mu = nu - nl;  // in [-1/2, 1/2]
  const bool exp_scaled = x >= 2.0;
  KPair p = exp_scaled ? steed_cf2(mu, x) : temme_series(mu, x);

  double kmu = p.kmu;
  double kmu1 = p.kmu1;
  double log_extra = 0.0;
  const double xi2 = 2.0 / x;
  for (int i = 1; i <= nl; ++i) {
    const double knext = (mu + i) * xi2 * kmu1 + kmu;
    kmu = kmu1;
    kmu1 = knext;
    if (kmu1 > kRescaleCeiling) {
      kmu1 /= kRescaleCeiling;
      kmu /= kRescaleCeiling;
      log_extra += std::log(kRescaleCeiling);
    }
  }
  return {kmu, log_extra, exp_scaled};
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) domain_fail("ln_gamma: argument must be positive");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double gamma_fn(double x) {
  if (!(x > 0.0)) domain_fail("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double bessel_k_log(double nu, double x) {
  const KCore c = bessel_k_core(nu, x);
  double lk = std::log(c.value) + c.log_extra;
  if (c.exp_scaled) lk -= x;
  return lk;
}

double bessel_k_scaled(double nu, double x) {
  const KCore c = bessel_k_core(nu, x);
  if (c.log_extra == 0.0)
    return c.exp_scaled ? c.value : c.value * std::exp(x);
  const double lk = std::log(c.value) + c.log_extra + (c.exp_scaled ? 0.0 : x);
  if (lk >= std::log(std::numeric_limits<double>::max()))
    domain_fail("bessel_k_scaled: result overflows; use bessel_k_log");
  return std::exp(lk);
}

double bessel_k(double nu, double x) {
  if (x > kAccuracy.max_arg)
    domain_fail("bessel_k: argument " + std::to_string(x) +
                " exceeds the unscaled-form maximum " + std::to_string(kAccuracy.max_arg) +
                "; use bessel_k_log");
  const KCore c = bessel_k_core(nu, x);
  if (c.log_extra == 0.0) {
    const double v = c.exp_scaled ? c.value * std::exp(-x) : c.value;
    if (v < std::numeric_limits<double>::min())
      domain_fail("bessel_k: result underflows; use bessel_k_log");
    return v;
  }
  const double lk = std::log(c.value) + c.log_extra - (c.exp_scaled ? x : 0.0);
  if (lk >= std::log(std::numeric_limits<double>::max()))
    domain_fail("bessel_k: result overflows; use bessel_k_log");
  return std::exp(lk);
}

double reg_lower_inc_gamma(double a, double x) {
  if (!(a > 0.0)) domain_fail("reg_lower_inc_gamma: shape must be positive");
  if (std::isnan(x) || x < 0.0)
    domain_fail("reg_lower_inc_gamma: argument must be nonnegative");
  if (x == 0.0) return 0.0;
  const double log_prefactor = a * std::log(x) - x - ln_gamma(a);
  if (x < a + 1.0) {
    // series for P(a, x)
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 1; n <= kMaxIter; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-17) {
        const double p = sum * std::exp(log_prefactor);
        return std::min(1.0, std::max(0.0, p));
      }
    }
    throw AccuracyError("reg_lower_inc_gamma: series did not converge",
                        std::numeric_limits<double>::quiet_NaN());
  }
  // modified Lentz continued fraction for Q(a, x)
  const double fpmin = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) {
      const double q = std::exp(log_prefactor) * h;
      return std::min(1.0, std::max(0.0, 1.0 - q));
    }
  }
  throw AccuracyError("reg_lower_inc_gamma: continued fraction did not converge",
                      std::numeric_limits<double>::quiet_NaN());
}

double erfc(double x) {
  if (std::isnan(x)) domain_fail("erfc: NaN argument");
  return std::erfc(x);
}

}  // namespace ggsum::specfun
