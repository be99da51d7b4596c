#ifndef GGSUM_SUM_APPROX_HPP
#define GGSUM_SUM_APPROX_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "ggsum/distributions.hpp"

namespace ggsum {

/// Sum of L independent copies of one GG law.
struct IIDSumSpec {
  int L;
  GGParams base;

  void validate() const;
};

/// One variate of a non-identical sum: integer shape m and mean omega.
struct INIDVariate {
  int m;
  double omega;
};

/// Sum of independent GG variates sharing the shaping parameter k_common,
/// with per-variate integer shapes m_l and means omega_l.  The integer
/// restriction comes from the finite index ranges of the weight recursion;
/// non-integer shapes are rejected, never rounded.
struct INIDSumSpec {
  double k_common;
  std::vector<INIDVariate> variates;

  int L() const { return int(variates.size()); }
  double omega_total() const;
  void validate() const;
};

/// One signed weight of the Gamma-sum partial-fraction table; i indexes the
/// scale group (after merging equal scales), j = 1..m_i the component shape.
struct WeightEntry {
  int i;
  int j;
  double weight;
};

struct WeightTable {
  std::vector<WeightEntry> entries;
  std::string warning;  ///< nonempty when scale spacing is nearly degenerate

  double sum() const;
};

/// Signed-weight finite mixture of GG laws approximating a non-identical sum.
struct MixtureComponent {
  double weight;
  GGParams params;
  int i;  ///< scale-group provenance
  int j;  ///< component shape provenance
};

struct GGMixture {
  std::vector<MixtureComponent> components;
  std::string warning;

  double weight_sum() const;
  double mean() const;
};

/// Exact first two moments of the approximation error: the mean is zero and
/// the variance is (L-1) omega^2 / (k m).
struct ErrorMoments {
  double mean;
  double variance;
};

/// Empirical error moments with standard errors.
struct MCErrorMoments {
  double mean;
  double mean_std_error;
  double variance;
  double variance_std_error;
  std::uint64_t n_samples;
};

/// Fitted adjustment for the dominant shape of the single-GG sum
/// approximation:
///   (L-1) (-0.127 - 0.95 k_max - 0.0058 m_min) / (1 + 0.00124 k_max + 0.98 m_min).
/// Arguments must already be ordered so that k_max >= m_min.
double adjustment_regression(int L, double k_max, double m_min);

/// Single-GG approximation of an i.i.d. sum: shapes (L k, L m) with the
/// larger one corrected by the fitted adjustment (k wins ties), mean L omega.
GGParams approx_sum_iid(const IIDSumSpec& spec);

/// Exact raw moments E[S^nu], nu = 1..nu_max (nu_max <= 8), by iterated
/// binomial convolution of the per-variate moment sequences.
std::vector<double> sum_moments_exact(const IIDSumSpec& spec, int nu_max);
std::vector<double> sum_moments_exact(const INIDSumSpec& spec, int nu_max);

enum class AdjustmentObjective {
  kRelativeSum,  ///< sum over nu of |moment mismatch| / exact moment
  kAbsoluteSum,  ///< plain sum of |moment mismatch|
};

/// Moment-matching alternative to the fitted adjustment: minimizes the
/// aggregate mismatch of the first four moments over the adjustment value.
double solve_adjustment(const IIDSumSpec& spec,
                        AdjustmentObjective objective = AdjustmentObjective::kRelativeSum);

ErrorMoments error_moments(const IIDSumSpec& spec);

/// Signed weights of the Gamma-sum mixture via the partial-fraction
/// recursion: base weight at j = m_i in sign/log-magnitude form, then the
/// downward recursion over j.  Variates with exactly equal scales
/// theta_l = omega_l / m_l are merged first; relative scale spacing below
/// 1e-9 is an error and below 1e-4 attaches a warning.
WeightTable gamma_sum_weights(const INIDSumSpec& spec);

/// GG mixture approximating the non-identical sum: one component per weight,
/// with parameters (L k_common, j, j omega_i / m_i).  With swap_roles the
/// two shape labels are interchanged in the output (the common shape is then
/// the second one); the mixture law is identical.
GGMixture approx_sum_inid(const INIDSumSpec& spec, bool swap_roles = false);

double mixture_pdf(const GGMixture& mix, double x);
double mixture_cdf(const GGMixture& mix, double x, const QuadSpec& q = {});
double mixture_moment(const GGMixture& mix, double n);

/// Draws the per-variate Gamma factors, evaluates the approximation error of
/// each sample directly, and returns empirical mean and variance with
/// standard errors.  Requires n_samples >= 10^4.
MCErrorMoments mc_error_moments(const IIDSumSpec& spec, std::uint64_t n_samples,
                                std::uint64_t seed);

}  // namespace ggsum

#endif
