#include "ggsum/systems_ow.hpp"

#include <cmath>

#include "ggsum/errors.hpp"
#include "ggsum/specfun.hpp"

namespace ggsum {

double OWConfig::omega_1() const {
  if (is_iid()) return std::get<OWLinksIID>(links).I_o;
  return std::get<std::vector<OWLinkINID>>(links).front().omega;
}

double OWConfig::mu_1() const {
  const double w = omega_1();
  return eta * eta * w * w / N_o;
}

void OWConfig::validate() const {
  if (M < 1 || N < 1) throw ValidationError("OWConfig: M and N must be >= 1");
  if (!(eta > 0.0) || !(N_o > 0.0))
    throw ValidationError("OWConfig: eta and N_o must be positive");
  if (is_iid()) {
    const auto& l = std::get<OWLinksIID>(links);
    if (!(l.a > 0.0)) throw ValidationError("OWConfig: turbulence shape must be positive");
    if (!(l.I_o > 0.0)) throw ValidationError("OWConfig: mean irradiance must be positive");
  } else {
    const auto& ls = std::get<std::vector<OWLinkINID>>(links);
    if (int(ls.size()) != M * N)
      throw ValidationError("OWConfig: need one link per transmit-receive pair (M*N)");
    for (const auto& l : ls) {
      if (l.a < 1)
        throw ValidationError(
            "OWConfig: non-identical links need positive integer shapes a_pq");
      if (!(l.omega > 0.0))
        throw ValidationError("OWConfig: mean irradiance must be positive");
    }
  }
}

OWConfig OWConfig::iid(int M, int N, double a, double I_o, double eta, double N_o) {
  OWConfig cfg{M, N, eta, N_o, OWLinksIID{a, I_o}};
  cfg.validate();
  return cfg;
}

OWConfig OWConfig::inid(int M, int N, std::vector<OWLinkINID> links, double eta,
                        double N_o) {
  OWConfig cfg{M, N, eta, N_o, std::move(links)};
  cfg.validate();
  return cfg;
}

std::variant<GGParams, GGMixture> ow_aggregate_law(const OWConfig& cfg) {
  cfg.validate();
  const int L = cfg.link_count();
  if (cfg.is_iid()) {
    const auto& l = std::get<OWLinksIID>(cfg.links);
    return approx_sum_iid({L, {1.0, l.a, l.I_o}});
  }
  const auto& ls = std::get<std::vector<OWLinkINID>>(cfg.links);
  if (L == 1) return GGParams{1.0, double(ls[0].a), ls[0].omega};
  INIDSumSpec spec{1.0, {}};
  for (const auto& l : ls) spec.variates.push_back({l.a, l.omega});
  return approx_sum_inid(spec);
}

namespace {

GGParams scaled(const GGParams& p, double factor) {
  return {p.k, p.m, p.omega * factor};
}

double law_mean(const std::variant<GGParams, GGMixture>& law) {
  if (std::holds_alternative<GGParams>(law)) return std::get<GGParams>(law).omega;
  return std::get<GGMixture>(law).mean();
}

}  // namespace

double ow_ber(const OWConfig& cfg, const QuadSpec& q, double* pre_clamp) {
  const auto law = ow_aggregate_law(cfg);
  // reduce to unit-mean irradiance; all physical constants enter through the
  // dimensionless erfc coefficient
  const double total = law_mean(law);
  const double coeff =
      cfg.eta * total / (2.0 * cfg.M * cfg.N * std::sqrt(cfg.N_o));
  auto kernel = [coeff](double u) { return 0.5 * specfun::erfc(coeff * u); };

  double v;
  if (std::holds_alternative<GGParams>(law)) {
    v = expect_under_gg(kernel, scaled(std::get<GGParams>(law), 1.0 / total), q);
  } else {
    v = 0.0;
    for (const auto& c : std::get<GGMixture>(law).components)
      v += c.weight * expect_under_gg(kernel, scaled(c.params, 1.0 / total), q);
  }
  if (pre_clamp) *pre_clamp = v;
  if (v < -1e-9 || v > 0.5 + 1e-9)
    throw IllConditioningError("ow_ber: signed sum " + std::to_string(v) +
                               " escapes (0, 1/2]");
  return std::min(0.5, std::max(0.0, v));
}

double ow_outage(const OWConfig& cfg, double h_th, const QuadSpec& q) {
  if (!(h_th > 0.0)) throw ValidationError("ow_outage: threshold must be positive");
  const auto law = ow_aggregate_law(cfg);
  const double i_th =
      cfg.M * cfg.N / cfg.eta * std::sqrt(h_th * cfg.N_o);
  const double total = law_mean(law);
  const double u_th = i_th / total;
  if (std::holds_alternative<GGParams>(law))
    return gg_cdf(scaled(std::get<GGParams>(law), 1.0 / total), u_th, q);
  GGMixture unit = std::get<GGMixture>(law);
  for (auto& c : unit.components) c.params.omega /= total;
  return mixture_cdf(unit, u_th, q);
}

MetricCurve ow_curve(const OWConfig& cfg, std::span<const double> sweep_db,
                     const OWMetric& metric, const QuadSpec& q) {
  cfg.validate();
  if (sweep_db.empty()) throw ValidationError("ow_curve: empty sweep");
  for (std::size_t i = 1; i < sweep_db.size(); ++i)
    if (!(sweep_db[i] > sweep_db[i - 1]))
      throw ValidationError("ow_curve: sweep must be strictly increasing");

  MetricCurve curve;
  for (const double db : sweep_db) {
    const double lin = db_to_linear(db);
    double v;
    if (metric.kind == OWMetric::Kind::kBer) {
      OWConfig point = cfg;
      const double w1 = cfg.omega_1();
      point.N_o = cfg.eta * cfg.eta * w1 * w1 / lin;  // sets mu_1 = lin
      v = ow_ber(point, q);
    } else {
      v = ow_outage(cfg, lin * cfg.mu_1(), q);
    }
    curve.points.push_back({db, v, std::nullopt});
  }
  return curve;
}

}  // namespace ggsum
