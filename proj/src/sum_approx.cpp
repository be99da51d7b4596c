#include "ggsum/sum_approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ggsum/errors.hpp"
#include "ggsum/specfun.hpp"

namespace ggsum {

namespace {

constexpr double kThetaHardFloor = 1e-9;  // relative scale spacing below this is an error
constexpr double kThetaWarnFloor = 1e-4;
constexpr int kMaxMomentOrder = 8;

std::vector<std::vector<double>> binomial_table(int n) {
  std::vector<std::vector<double>> c(n + 1);
  for (int i = 0; i <= n; ++i) {
    c[i].assign(i + 1, 1.0);
    for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c;
}

// raw moments 0..nu_max of one GG law
std::vector<double> gg_moments(const GGParams& p, int nu_max) {
  std::vector<double> m(nu_max + 1);
  for (int n = 0; n <= nu_max; ++n) m[n] = gg_moment(p, double(n));
  return m;
}

// moments of X + Y from the moments of the independent parts
std::vector<double> convolve_moments(const std::vector<double>& a,
                                     const std::vector<double>& b,
                                     const std::vector<std::vector<double>>& binom) {
  const int n = int(a.size()) - 1;
  std::vector<double> out(n + 1, 0.0);
  for (int nu = 0; nu <= n; ++nu)
    for (int j = 0; j <= nu; ++j) out[nu] += binom[nu][j] * a[j] * b[nu - j];
  return out;
}

void check_moment_order(int nu_max) {
  if (nu_max < 1 || nu_max > kMaxMomentOrder)
    throw ValidationError("sum_moments_exact: nu_max must be in 1.." +
                          std::to_string(kMaxMomentOrder));
}

}  // namespace

void IIDSumSpec::validate() const {
  if (L < 1) throw ValidationError("IIDSumSpec: L must be >= 1");
  base.validate();
}

double INIDSumSpec::omega_total() const {
  double s = 0.0;
  for (const auto& v : variates) s += v.omega;
  return s;
}

void INIDSumSpec::validate() const {
  if (!(k_common > 0.0) || !std::isfinite(k_common))
    throw ValidationError("INIDSumSpec: k_common must be positive");
  if (variates.empty()) throw ValidationError("INIDSumSpec: needs at least one variate");
  for (const auto& v : variates) {
    if (v.m < 1) throw ValidationError("INIDSumSpec: shapes m_l must be positive integers");
    if (!(v.omega > 0.0) || !std::isfinite(v.omega))
      throw ValidationError("INIDSumSpec: means omega_l must be positive");
  }
}

double WeightTable::sum() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.weight;
  return s;
}

double GGMixture::weight_sum() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight;
  return s;
}

double GGMixture::mean() const {
  double s = 0.0;
  for (const auto& c : components) s += c.weight * c.params.omega;
  return s;
}

double adjustment_regression(int L, double k_max, double m_min) {
  if (L < 1) throw ValidationError("adjustment_regression: L must be >= 1");
  if (!(k_max > 0.0) || !(m_min > 0.0))
    throw ValidationError("adjustment_regression: shapes must be positive");
  if (k_max < m_min)
    throw ValidationError(
        "adjustment_regression: arguments must satisfy k_max >= m_min (swap them)");
  return (L - 1) * (-0.127 - 0.95 * k_max - 0.0058 * m_min) /
         (1.0 + 0.00124 * k_max + 0.98 * m_min);
}

GGParams approx_sum_iid(const IIDSumSpec& spec) {
  spec.validate();
  if (spec.L == 1) return spec.base;
  const double hi = std::max(spec.base.k, spec.base.m);
  const double lo = std::min(spec.base.k, spec.base.m);
  const double eps = adjustment_regression(spec.L, hi, lo);
  const double adjusted = spec.L * hi + eps;
  if (!(adjusted > 0.0))
    throw ValidationError(
        "approx_sum_iid: adjusted shape " + std::to_string(adjusted) +
        " is not positive; the fitted adjustment does not cover these parameters");
  GGParams out;
  out.omega = spec.L * spec.base.omega;
  if (spec.base.k >= spec.base.m) {  // k holds the larger shape (ties adjust k)
    out.k = adjusted;
    out.m = spec.L * lo;
  } else {
    out.k = spec.L * lo;
    out.m = adjusted;
  }
  return out;
}

std::vector<double> sum_moments_exact(const IIDSumSpec& spec, int nu_max) {
  spec.validate();
  check_moment_order(nu_max);
  const auto binom = binomial_table(nu_max);
  const auto one = gg_moments(spec.base, nu_max);
  std::vector<double> acc = one;
  for (int l = 2; l <= spec.L; ++l) acc = convolve_moments(acc, one, binom);
  return {acc.begin() + 1, acc.end()};
}

std::vector<double> sum_moments_exact(const INIDSumSpec& spec, int nu_max) {
  spec.validate();
  check_moment_order(nu_max);
  const auto binom = binomial_table(nu_max);
  std::vector<double> acc;
  for (const auto& v : spec.variates) {
    const auto one = gg_moments({spec.k_common, double(v.m), v.omega}, nu_max);
    acc = acc.empty() ? one : convolve_moments(acc, one, binom);
  }
  return {acc.begin() + 1, acc.end()};
}

double solve_adjustment(const IIDSumSpec& spec, AdjustmentObjective objective) {
  spec.validate();
  if (spec.L == 1) return 0.0;
  const double hi = std::max(spec.base.k, spec.base.m);
  const double lo = std::min(spec.base.k, spec.base.m);
  const double shape_other = spec.L * lo;
  const double mean = spec.L * spec.base.omega;
  const auto exact = sum_moments_exact(spec, 4);

  auto cost = [&](double eps) {
    const GGParams p{spec.L * hi + eps, shape_other, mean};
    double c = 0.0;
    for (int nu = 1; nu <= 4; ++nu) {
      const double diff = std::abs(gg_moment(p, nu) - exact[nu - 1]);
      c += (objective == AdjustmentObjective::kRelativeSum) ? diff / exact[nu - 1]
                                                            : diff;
    }
    return c;
  };

  // coarse scan for a bracket, then golden-section refinement
  const double lo_b = -spec.L * hi + 1e-3;
  const double hi_b = spec.L * hi;
  const int n_scan = 400;
  int best = -1;
  double best_cost = std::numeric_limits<double>::infinity();
  auto at = [&](int i) { return lo_b + (hi_b - lo_b) * i / double(n_scan); };
  for (int i = 0; i <= n_scan; ++i) {
    const double c = cost(at(i));
    if (c < best_cost) {
      best_cost = c;
      best = i;
    }
  }
  if (best <= 0 || best >= n_scan)
    throw OptimizationError("solve_adjustment: no interior bracket found");

  double a = at(best - 1), b = at(best + 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = cost(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = cost(x2);
    }
  }
  return 0.5 * (a + b);
}

ErrorMoments error_moments(const IIDSumSpec& spec) {
  spec.validate();
  const double var = (spec.L - 1) * spec.base.omega * spec.base.omega /
                     (spec.base.k * spec.base.m);
  return {0.0, var};
}

namespace {

struct ScaleGroup {
  double theta;  // omega / m
  int m;         // merged shape
};

// Merge variates with exactly equal scales, then enforce spacing floors.
std::pair<std::vector<ScaleGroup>, std::string> build_groups(const INIDSumSpec& spec) {
  std::vector<ScaleGroup> groups;
  for (const auto& v : spec.variates) {
    const double theta = v.omega / v.m;
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const ScaleGroup& g) { return g.theta == theta; });
    if (it != groups.end())
      it->m += v.m;
    else
      groups.push_back({theta, v.m});
  }
  std::string warning;
  double min_spacing = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      const double rel = std::abs(groups[i].theta - groups[j].theta) /
                         std::max(groups[i].theta, groups[j].theta);
      min_spacing = std::min(min_spacing, rel);
    }
  if (groups.size() > 1) {
    if (min_spacing < kThetaHardFloor)
      throw IllConditioningError(
          "gamma_sum_weights: scale spacing " + std::to_string(min_spacing) +
          " is below the supported floor; weights would blow up");
    if (min_spacing < kThetaWarnFloor)
      warning = "scale spacing " + std::to_string(min_spacing) +
                " is nearly degenerate; weights may be large";
  }
  return {groups, warning};
}

}  // namespace

WeightTable gamma_sum_weights(const INIDSumSpec& spec) {
  spec.validate();
  auto [groups, warning] = build_groups(spec);
  const int n = int(groups.size());

  WeightTable table;
  table.warning = std::move(warning);

  if (n == 1) {  // a single Gamma is its own sum
    const int m = groups[0].m;
    for (int j = 1; j <= m; ++j) table.entries.push_back({1, j, j == m ? 1.0 : 0.0});
    return table;
  }

  for (int i = 0; i < n; ++i) {
    const int mi = groups[i].m;
    const double theta_i = groups[i].theta;

    // top weight at j = m_i as sign and log magnitude
    double log_mag = mi * std::log(theta_i);
    double sign = 1.0;
    for (int h = 0; h < n; ++h) {
      log_mag -= groups[h].m * std::log(groups[h].theta);
      if (h == i) continue;
      const double diff = 1.0 / groups[h].theta - 1.0 / theta_i;
      log_mag -= groups[h].m * std::log(std::abs(diff));
      if (diff < 0.0 && groups[h].m % 2 == 1) sign = -sign;
    }
    std::vector<double> w(mi + 1, 0.0);  // w[j] for j = 1..m_i
    w[mi] = sign * std::exp(log_mag);

    // recursion coefficients: coef[r] multiplies w[j+r] in the step down to j
    std::vector<double> coef(mi, 0.0);
    for (int r = 1; r < mi; ++r) {
      double s = 0.0;
      for (int q = 0; q < n; ++q) {
        if (q == i) continue;
        s += groups[q].m *
             std::pow(1.0 / theta_i - 1.0 / groups[q].theta, -double(r));
      }
      coef[r] = s * std::pow(theta_i, -double(r));
    }
    for (int t = 1; t < mi; ++t) {
      double s = 0.0;
      for (int r = 1; r <= t; ++r) s += coef[r] * w[mi - t + r];
      w[mi - t] = s / t;
    }
    for (int j = 1; j <= mi; ++j) table.entries.push_back({i + 1, j, w[j]});
  }

  const double total = table.sum();
  if (std::abs(total - 1.0) > 1e-9)
    throw IllConditioningError(
        "gamma_sum_weights: weights sum to " + std::to_string(total) +
        " instead of 1; the scales are too close for stable evaluation");
  return table;
}

GGMixture approx_sum_inid(const INIDSumSpec& spec, bool swap_roles) {
  spec.validate();
  const bool all_equal = std::all_of(
      spec.variates.begin(), spec.variates.end(), [&](const INIDVariate& v) {
        return v.m == spec.variates.front().m && v.omega == spec.variates.front().omega;
      });
  if (all_equal && spec.L() > 1)
    throw IllConditioningError(
        "approx_sum_inid: all variates are identical; use approx_sum_iid");

  WeightTable wt = gamma_sum_weights(spec);
  auto [groups, warning] = build_groups(spec);
  (void)warning;

  GGMixture mix;
  mix.warning = wt.warning;
  const double shape_common = spec.L() * spec.k_common;
  for (const auto& e : wt.entries) {
    const double omega_c = e.j * groups[e.i - 1].theta;
    GGParams p = swap_roles ? GGParams{double(e.j), shape_common, omega_c}
                            : GGParams{shape_common, double(e.j), omega_c};
    mix.components.push_back({e.weight, p, e.i, e.j});
  }

  const double wsum = mix.weight_sum();
  const double mean = mix.mean();
  const double target = spec.omega_total();
  if (std::abs(wsum - 1.0) > 1e-9 ||
      std::abs(mean - target) > 1e-9 * std::max(1.0, target))
    throw IllConditioningError("approx_sum_inid: mixture invariants violated");
  return mix;
}

double mixture_pdf(const GGMixture& mix, double x) {
  double s = 0.0;
  for (const auto& c : mix.components) s += c.weight * gg_pdf(c.params, x);
  return s;
}

double mixture_cdf(const GGMixture& mix, double x, const QuadSpec& q) {
  double s = 0.0;
  for (const auto& c : mix.components) s += c.weight * gg_cdf(c.params, x, q);
  if (s < -1e-9 || s > 1.0 + 1e-9)
    throw IllConditioningError("mixture_cdf: value " + std::to_string(s) +
                               " escapes [0,1] beyond tolerance");
  return std::min(1.0, std::max(0.0, s));
}

double mixture_moment(const GGMixture& mix, double n) {
  double s = 0.0;
  for (const auto& c : mix.components) s += c.weight * gg_moment(c.params, n);
  return s;
}

MCErrorMoments mc_error_moments(const IIDSumSpec& spec, std::uint64_t n_samples,
                                std::uint64_t seed) {
  spec.validate();
  if (n_samples < 10000)
    throw ValidationError("mc_error_moments: needs at least 10^4 samples");
  const int L = spec.L;
  const GammaParams px{spec.base.k, 1.0 / spec.base.k};
  const GammaParams py{spec.base.m, spec.base.omega / spec.base.m};

  Philox4x32 rng(seed, 0);
  std::vector<double> x(L), y(L);
  double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
  for (std::uint64_t it = 0; it < n_samples; ++it) {
    for (int l = 0; l < L; ++l) {
      x[l] = gamma_sample(px, rng);
      y[l] = gamma_sample(py, rng);
    }
    double eps = 0.0;
    for (int i = 0; i < L - 1; ++i)
      for (int j = i + 1; j < L; ++j) eps += (x[i] - x[j]) * (y[i] - y[j]);
    eps /= L;
    s1 += eps;
    const double e2 = eps * eps;
    s2 += e2;
    s3 += e2 * eps;
    s4 += e2 * e2;
  }
  const double n = double(n_samples);
  const double mean = s1 / n;
  const double var = (s2 - n * mean * mean) / (n - 1.0);
  // central moments for the standard errors
  const double m2 = s2 / n - mean * mean;
  const double m4 = s4 / n - 4.0 * mean * s3 / n + 6.0 * mean * mean * s2 / n -
                    3.0 * mean * mean * mean * mean;
  MCErrorMoments out;
  out.mean = mean;
  out.mean_std_error = std::sqrt(std::max(0.0, m2) / n);
  out.variance = var;
  out.variance_std_error = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  out.n_samples = n_samples;
  return out;
}

}  // namespace ggsum
