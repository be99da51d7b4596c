#ifndef GGSUM_SYSTEMS_RF_HPP
#define GGSUM_SYSTEMS_RF_HPP

#include <span>
#include <variant>
#include <vector>

#include "ggsum/curve.hpp"
#include "ggsum/sum_approx.hpp"

namespace ggsum {

/// Conditional bit-error kernels of the supported binary modulations:
/// BPSK uses erfc(sqrt(g))/2, DBPSK uses exp(-g)/2.
enum class Modulation { kBpsk, kDbpsk };

/// Conditional BER at instantaneous SNR g >= 0.
double conditional_ber(Modulation mod, double g);

/// Identical branches: common multipath shape m (any positive real) and
/// common mean branch SNR.
struct MRCBranchesIID {
  int L;
  double m;
  double gamma_bar;
};

/// One non-identical branch: integer multipath shape and mean SNR.
struct MRCBranchINID {
  int m;
  double gamma_bar;
};

/// Maximal-ratio-combining receiver over independent branches whose
/// shadowing shape k is common to all branches.
struct MRCConfig {
  double k_common;
  std::variant<MRCBranchesIID, std::vector<MRCBranchINID>> branches;

  int L() const;
  bool is_iid() const { return std::holds_alternative<MRCBranchesIID>(branches); }

  /// Mean SNR of the first branch.
  double gamma_bar_1() const;

  /// Returns a copy with every branch SNR scaled so the first branch has the
  /// given mean (profile shape preserved).
  MRCConfig with_gamma_bar_1(double gamma_bar_1) const;

  void validate() const;

  static MRCConfig iid(int L, double k, double m, double gamma_bar);
  static MRCConfig inid(double k, std::vector<MRCBranchINID> branches);

  /// Non-identical branches with the exponential SNR-decay profile
  /// gamma_bar_l = gamma_bar_1 * exp(-delta (l - 1)).
  static MRCConfig exponential_profile(double k, const std::vector<int>& m_list,
                                       double gamma_bar_1, double delta);
};

using SnrLaw = std::variant<GGParams, GGMixture>;

/// Law of the combiner-output SNR: a single GG law for identical branches,
/// a signed GG mixture otherwise.
SnrLaw mrc_output_law(const MRCConfig& cfg);

/// Average BER of the receiver.  The mixture path assembles the full signed
/// sum first; a result escaping (0, 1/2] by more than 1e-9 is an error,
/// smaller excursions are clamped and the raw value reported via pre_clamp.
double rf_ber(const MRCConfig& cfg, Modulation mod, const QuadSpec& q = {},
              double* pre_clamp = nullptr);

/// Outage probability P(combined SNR <= gamma_th).
double rf_outage(const MRCConfig& cfg, double gamma_th, const QuadSpec& q = {});

struct RFMetric {
  enum class Kind { kBer, kOutage };
  Kind kind = Kind::kBer;
  Modulation mod = Modulation::kBpsk;

  static RFMetric ber(Modulation m) { return {Kind::kBer, m}; }
  static RFMetric outage() { return {Kind::kOutage, Modulation::kBpsk}; }
};

/// Sweeps a metric over dB abscissae.  BER sweeps the first-branch mean SNR;
/// outage sweeps the normalized threshold gamma_th / gamma_bar_1.
MetricCurve rf_curve(const MRCConfig& cfg, std::span<const double> sweep_db,
                     const RFMetric& metric, const QuadSpec& q = {});

}  // namespace ggsum

#endif
