#ifndef GGSUM_SYSTEMS_OW_HPP
#define GGSUM_SYSTEMS_OW_HPP

#include <span>
#include <variant>
#include <vector>

#include "ggsum/curve.hpp"
#include "ggsum/sum_approx.hpp"

namespace ggsum {

/// Identical optical links: turbulence shape a (any positive real) and mean
/// irradiance I_o per link.
struct OWLinksIID {
  double a;
  double I_o;
};

/// One non-identical link: integer turbulence shape and mean irradiance.
/// The integer restriction mirrors the mixture-weight recursion.
struct OWLinkINID {
  int a;
  double omega;
};

/// MIMO optical-wireless receiver: M transmit and N receive apertures,
/// equal-gain combining, OOK over strong-turbulence links.  Each link's
/// irradiance follows a GG law with small-scale shape fixed to 1.  eta is
/// the optical-to-electrical conversion coefficient and N_o the noise
/// spectral density (noise variance N_o / 2).
struct OWConfig {
  int M;
  int N;
  double eta = 1.0;
  double N_o = 1.0;
  std::variant<OWLinksIID, std::vector<OWLinkINID>> links;

  int link_count() const { return M * N; }
  bool is_iid() const { return std::holds_alternative<OWLinksIID>(links); }

  /// Mean irradiance of the first link.
  double omega_1() const;

  /// Average electrical SNR of the first link, eta^2 omega_1^2 / N_o.
  double mu_1() const;

  void validate() const;

  static OWConfig iid(int M, int N, double a, double I_o, double eta = 1.0,
                      double N_o = 1.0);
  static OWConfig inid(int M, int N, std::vector<OWLinkINID> links,
                       double eta = 1.0, double N_o = 1.0);
};

/// Law of the aggregate irradiance I_T (sum over all M*N links): a single GG
/// law for identical links, a signed GG mixture otherwise.
std::variant<GGParams, GGMixture> ow_aggregate_law(const OWConfig& cfg);

/// Average OOK BER: the expectation of erfc(eta I / (2 M N sqrt(N_o))) / 2
/// under the aggregate irradiance law, evaluated in dimensionless form.
double ow_ber(const OWConfig& cfg, const QuadSpec& q = {},
              double* pre_clamp = nullptr);

/// Outage probability P(combined electrical SNR <= h_th), i.e. the CDF of
/// the aggregate irradiance at the normalized threshold
/// I_th = (M N / eta) sqrt(h_th N_o).
double ow_outage(const OWConfig& cfg, double h_th, const QuadSpec& q = {});

struct OWMetric {
  enum class Kind { kBer, kOutage };
  Kind kind = Kind::kBer;

  static OWMetric ber() { return {Kind::kBer}; }
  static OWMetric outage() { return {Kind::kOutage}; }
};

/// Sweeps a metric over dB abscissae.  BER sweeps the first-link average
/// electrical SNR mu_1 (realized as eta = 1, irradiance scale kept, noise
/// solved from mu); outage sweeps the normalized threshold h_th / mu_1.
MetricCurve ow_curve(const OWConfig& cfg, std::span<const double> sweep_db,
                     const OWMetric& metric, const QuadSpec& q = {});

}  // namespace ggsum

#endif
