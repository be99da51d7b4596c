#include "ggsum/systems_rf.hpp"

#include <cmath>

#include "ggsum/errors.hpp"
#include "ggsum/specfun.hpp"

namespace ggsum {

double conditional_ber(Modulation mod, double g) {
  if (!(g >= 0.0)) throw DomainError("conditional_ber: SNR must be nonnegative");
  switch (mod) {
    case Modulation::kBpsk:
      return 0.5 * specfun::erfc(std::sqrt(g));
    case Modulation::kDbpsk:
      return 0.5 * std::exp(-g);
  }
  throw ValidationError("conditional_ber: unknown modulation");
}

int MRCConfig::L() const {
  if (is_iid()) return std::get<MRCBranchesIID>(branches).L;
  return int(std::get<std::vector<MRCBranchINID>>(branches).size());
}

double MRCConfig::gamma_bar_1() const {
  if (is_iid()) return std::get<MRCBranchesIID>(branches).gamma_bar;
  return std::get<std::vector<MRCBranchINID>>(branches).front().gamma_bar;
}

MRCConfig MRCConfig::with_gamma_bar_1(double g1) const {
  if (!(g1 > 0.0)) throw ValidationError("MRCConfig: branch SNR must be positive");
  MRCConfig out = *this;
  const double scale = g1 / gamma_bar_1();
  if (out.is_iid()) {
    std::get<MRCBranchesIID>(out.branches).gamma_bar *= scale;
  } else {
    for (auto& b : std::get<std::vector<MRCBranchINID>>(out.branches))
      b.gamma_bar *= scale;
  }
  return out;
}

void MRCConfig::validate() const {
  if (!(k_common > 0.0) || !std::isfinite(k_common))
    throw ValidationError("MRCConfig: k must be positive");
  if (is_iid()) {
    const auto& b = std::get<MRCBranchesIID>(branches);
    if (b.L < 1) throw ValidationError("MRCConfig: L must be >= 1");
    if (!(b.m > 0.0)) throw ValidationError("MRCConfig: m must be positive");
    if (!(b.gamma_bar > 0.0))
      throw ValidationError("MRCConfig: branch SNR must be positive");
  } else {
    const auto& bs = std::get<std::vector<MRCBranchINID>>(branches);
    if (bs.empty()) throw ValidationError("MRCConfig: needs at least one branch");
    for (const auto& b : bs) {
      if (b.m < 1)
        throw ValidationError(
            "MRCConfig: non-identical branches need positive integer m_l");
      if (!(b.gamma_bar > 0.0))
        throw ValidationError("MRCConfig: branch SNR must be positive");
    }
  }
}

MRCConfig MRCConfig::iid(int L, double k, double m, double gamma_bar) {
  MRCConfig cfg{k, MRCBranchesIID{L, m, gamma_bar}};
  cfg.validate();
  return cfg;
}

MRCConfig MRCConfig::inid(double k, std::vector<MRCBranchINID> branches) {
  MRCConfig cfg{k, std::move(branches)};
  cfg.validate();
  return cfg;
}

MRCConfig MRCConfig::exponential_profile(double k, const std::vector<int>& m_list,
                                         double gamma_bar_1, double delta) {
  if (delta < 0.0) throw ValidationError("MRCConfig: decay factor must be >= 0");
  std::vector<MRCBranchINID> bs;
  for (std::size_t l = 0; l < m_list.size(); ++l)
    bs.push_back({m_list[l], gamma_bar_1 * std::exp(-delta * double(l))});
  return inid(k, std::move(bs));
}

SnrLaw mrc_output_law(const MRCConfig& cfg) {
  cfg.validate();
  if (cfg.is_iid()) {
    const auto& b = std::get<MRCBranchesIID>(cfg.branches);
    return approx_sum_iid({b.L, {cfg.k_common, b.m, b.gamma_bar}});
  }
  const auto& bs = std::get<std::vector<MRCBranchINID>>(cfg.branches);
  INIDSumSpec spec{cfg.k_common, {}};
  for (const auto& b : bs) spec.variates.push_back({b.m, b.gamma_bar});
  if (spec.variates.size() == 1) {
    // single branch: no mixture machinery involved
    return GGParams{cfg.k_common, double(bs[0].m), bs[0].gamma_bar};
  }
  return approx_sum_inid(spec);
}

namespace {

double checked_probability(double v, double limit, const char* what,
                           double* pre_clamp) {
  if (pre_clamp) *pre_clamp = v;
  if (v < -1e-9 || v > limit + 1e-9)
    throw IllConditioningError(std::string(what) + ": signed sum " +
                               std::to_string(v) + " escapes its range");
  return std::min(limit, std::max(0.0, v));
}

}  // namespace

double rf_ber(const MRCConfig& cfg, Modulation mod, const QuadSpec& q,
              double* pre_clamp) {
  const SnrLaw law = mrc_output_law(cfg);
  auto kernel = [mod](double g) { return conditional_ber(mod, g); };
  double v;
  if (std::holds_alternative<GGParams>(law)) {
    v = expect_under_gg(kernel, std::get<GGParams>(law), q);
  } else {
    v = 0.0;
    for (const auto& c : std::get<GGMixture>(law).components)
      v += c.weight * expect_under_gg(kernel, c.params, q);
  }
  return checked_probability(v, 0.5, "rf_ber", pre_clamp);
}

double rf_outage(const MRCConfig& cfg, double gamma_th, const QuadSpec& q) {
  if (!(gamma_th > 0.0)) throw ValidationError("rf_outage: threshold must be positive");
  const SnrLaw law = mrc_output_law(cfg);
  if (std::holds_alternative<GGParams>(law))
    return gg_cdf(std::get<GGParams>(law), gamma_th, q);
  return mixture_cdf(std::get<GGMixture>(law), gamma_th, q);
}

MetricCurve rf_curve(const MRCConfig& cfg, std::span<const double> sweep_db,
                     const RFMetric& metric, const QuadSpec& q) {
  cfg.validate();
  if (sweep_db.empty()) throw ValidationError("rf_curve: empty sweep");
  for (std::size_t i = 1; i < sweep_db.size(); ++i)
    if (!(sweep_db[i] > sweep_db[i - 1]))
      throw ValidationError("rf_curve: sweep must be strictly increasing");

  MetricCurve curve;
  for (const double db : sweep_db) {
    const double lin = db_to_linear(db);
    double v;
    if (metric.kind == RFMetric::Kind::kBer) {
      v = rf_ber(cfg.with_gamma_bar_1(lin), metric.mod, q);
    } else {
      v = rf_outage(cfg, lin * cfg.gamma_bar_1(), q);
    }
    curve.points.push_back({db, v, std::nullopt});
  }
  return curve;
}

}  // namespace ggsum
