#ifndef GGSUM_MONTECARLO_HPP
#define GGSUM_MONTECARLO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ggsum/curve.hpp"
#include "ggsum/sum_approx.hpp"
#include "ggsum/systems_ow.hpp"
#include "ggsum/systems_rf.hpp"

namespace ggsum {

/// Controls for the seeded Monte-Carlo estimators.  Sample index n draws
/// from the stream (master_seed, n / chunk_size); chunk partial results are
/// reduced in chunk order, so every estimate is a pure function of this
/// struct and the inputs, independent of how many threads run the chunks.
struct MCSpec {
  std::uint64_t master_seed = 1;
  std::uint64_t n_samples = 1000000;
  std::uint32_t chunk_size = 1u << 16;

  void validate() const;
};

struct MCEstimate {
  double value;
  double std_error;
  std::uint64_t n_samples;
  std::uint64_t master_seed;
};

/// Caps the worker count used for chunk evaluation (wall time only; results
/// are identical for any setting).  0 restores the hardware default.
void set_mc_max_threads(unsigned n);

/// Empirical CDF of the sum at each (sorted ascending) evaluation point.
std::vector<double> mc_sum_cdf(const IIDSumSpec& spec,
                               std::span<const double> eval_points,
                               const MCSpec& mc);
std::vector<double> mc_sum_cdf(const INIDSumSpec& spec,
                               std::span<const double> eval_points,
                               const MCSpec& mc);

/// Semi-analytic estimate of an MRC metric: the conditional-BER kernel (or
/// the outage indicator at gamma_th) averaged over sampled combiner-output
/// SNRs.  Standard error is sample-stddev/sqrt(n) for kernel averages and
/// the binomial formula for indicator averages.
MCEstimate mc_rf_metric(const MRCConfig& cfg, const RFMetric& metric,
                        double gamma_th, const MCSpec& mc);

/// Metric sweep sharing one set of channel draws across all abscissae
/// (the per-branch SNR profile is fixed; each abscissa rescales it).  Point
/// rows carry the MC standard error.  Abscissae follow rf_curve: BER sweeps
/// the first-branch SNR in dB, outage sweeps gamma_th / gamma_bar_1 in dB.
MetricCurve mc_rf_curve(const MRCConfig& cfg, std::span<const double> sweep_db,
                        const RFMetric& metric, const MCSpec& mc);

/// OW counterparts; metric.kind selects BER or outage at threshold h_th.
MCEstimate mc_ow_metric(const OWConfig& cfg, const OWMetric& metric,
                        double h_th, const MCSpec& mc);
MetricCurve mc_ow_curve(const OWConfig& cfg, std::span<const double> sweep_db,
                        const OWMetric& metric, const MCSpec& mc);

/// Horizontal distance in dB between two curves at a metric level, by
/// log-linear interpolation of each curve.  Both curves must pass through
/// the level monotonically.
double gap_in_db(const MetricCurve& analytic, const MetricCurve& mc,
                 double target_level);

}  // namespace ggsum

#endif
