#include "cli_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "ggsum/errors.hpp"
#include "ggsum/montecarlo.hpp"
#include "ggsum/rng.hpp"
#include "ggsum/version.hpp"

namespace ggsum::cli {

namespace {

// ---------------------------------------------------------------------------
// parameter access

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& kv) : kv_(kv) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  const std::string& raw(const std::string& key) {
    auto it = kv_.find(key);
    if (it == kv_.end())
      throw ValidationError("missing required parameter '" + key + "'");
    used_.push_back(key);
    return it->second;
  }

  std::string str(const std::string& key, const std::string& dflt) {
    return has(key) ? raw(key) : dflt;
  }

  double number(const std::string& key) {
    const std::string& s = raw(key);
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("parameter '" + key + "' is not a number: " + s);
    }
  }

  double number(const std::string& key, double dflt) {
    return has(key) ? number(key) : dflt;
  }

  long long integer(const std::string& key) {
    const double v = number(key);
    if (v != std::floor(v))
      throw ValidationError("parameter '" + key + "' must be an integer");
    return (long long)v;
  }

  long long integer(const std::string& key, long long dflt) {
    return has(key) ? integer(key) : dflt;
  }

  bool flag(const std::string& key) {
    if (!has(key)) return false;
    const std::string& s = raw(key);
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
    throw ValidationError("parameter '" + key + "' must be a boolean");
  }

  std::vector<double> list(const std::string& key) {
    const std::string& s = raw(key);
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t pos = 0;
        out.push_back(std::stod(item, &pos));
        if (pos != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw ValidationError("parameter '" + key + "' has a bad entry: " + item);
      }
    }
    if (out.empty())
      throw ValidationError("parameter '" + key + "' must not be empty");
    return out;
  }

  std::vector<int> int_list(const std::string& key) {
    std::vector<int> out;
    for (double v : list(key)) {
      if (v != std::floor(v))
        throw ValidationError("parameter '" + key + "' needs integer entries");
      out.push_back(int(v));
    }
    return out;
  }

  void finish() const {
    for (const auto& [key, value] : kv_) {
      (void)value;
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        throw ValidationError("unknown parameter '" + key + "'");
    }
  }

 private:
  const std::map<std::string, std::string>& kv_;
  mutable std::vector<std::string> used_;
};

std::vector<double> parse_sweep(const std::string& text) {
  double start = 0, stop = 0, step = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
    throw ValidationError("sweep must be start:stop:step (dB), got '" + text + "'");
  if (!(step > 0.0) || stop < start)
    throw ValidationError("sweep needs stop >= start and step > 0");
  std::vector<double> s;
  for (double v = start; v <= stop + 1e-9; v += step) s.push_back(v);
  return s;
}

QuadSpec quad_from(Params& p) {
  QuadSpec q;
  q.rel_tol = p.number("rel-tol", q.rel_tol);
  q.abs_tol = p.number("abs-tol", q.abs_tol);
  q.max_refinements = int(p.integer("max-refinements", q.max_refinements));
  q.tail_mass_tol = p.number("tail-mass-tol", q.tail_mass_tol);
  return q;
}

MCSpec mc_from(Params& p) {
  MCSpec mc;
  mc.n_samples = std::uint64_t(p.number("samples", 1e6));
  mc.master_seed = std::uint64_t(p.integer("seed", 1));
  mc.chunk_size = std::uint32_t(p.integer("chunk-size", 1u << 16));
  return mc;
}

GGParams gg_from(Params& p) {
  return GGParams{p.number("k"), p.number("m"), p.number("omega")};
}

// branch table of an MRC run; the sweep moves gamma_bar_1, so it defaults to
// 0 dB when only a sweep is given
MRCConfig mrc_from(Params& p) {
  const double k = p.number("k");
  if (p.has("m-list")) {
    const auto m_list = p.int_list("m-list");
    if (p.has("L") && p.integer("L") != (long long)m_list.size())
      throw ValidationError("L disagrees with the m-list length");
    std::vector<MRCBranchINID> branches;
    if (p.has("gbar-db-list")) {
      const auto g = p.list("gbar-db-list");
      if (g.size() != m_list.size())
        throw ValidationError("gbar-db-list and m-list must have equal length");
      for (std::size_t i = 0; i < m_list.size(); ++i)
        branches.push_back({m_list[i], db_to_linear(g[i])});
      return MRCConfig::inid(k, std::move(branches));
    }
    const double g1 = db_to_linear(p.number("gbar1-db", 0.0));
    const double delta = p.number("delta", 0.0);
    return MRCConfig::exponential_profile(k, m_list, g1, delta);
  }
  const int L = int(p.integer("L"));
  const double m = p.number("m");
  const double g = db_to_linear(p.number("gbar-db", 0.0));
  return MRCConfig::iid(L, k, m, g);
}

// link table of an OW run; mu-db (first-link electrical SNR) and n0 are
// alternative noise parameterizations
OWConfig ow_from(Params& p) {
  const int M = int(p.integer("M"));
  const int N = int(p.integer("N"));
  const double eta = p.number("eta", 1.0);
  double n0 = 1.0;
  const bool has_mu = p.has("mu-db");
  const bool has_n0 = p.has("n0");
  if (has_mu && has_n0)
    throw ValidationError("give either mu-db or n0, not both");
  if (has_n0) n0 = p.number("n0");

  OWConfig cfg;
  if (p.has("a-list")) {
    const auto a_list = p.int_list("a-list");
    const auto omega_list = p.list("omega-list");
    if (a_list.size() != omega_list.size())
      throw ValidationError("a-list and omega-list must have equal length");
    std::vector<OWLinkINID> links;
    for (std::size_t i = 0; i < a_list.size(); ++i)
      links.push_back({a_list[i], omega_list[i]});
    cfg = OWConfig::inid(M, N, std::move(links), eta, n0);
  } else {
    cfg = OWConfig::iid(M, N, p.number("a"), p.number("io", 1.0), eta, n0);
  }
  if (has_mu) {
    const double mu = db_to_linear(p.number("mu-db"));
    const double w1 = cfg.omega_1();
    cfg.N_o = eta * eta * w1 * w1 / mu;
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// report assembly

struct Report {
  const RunConfig* cfg = nullptr;
  bool with_rng = false;
  std::uint64_t master_seed = 0;
  std::vector<std::string> scalars;              // "name = value" lines
  std::vector<std::string> columns;              // CSV header
  std::vector<std::vector<double>> rows;
  std::vector<std::string> trailers;             // trailing comment lines

  void scalar(const std::string& name, double v) {
    scalars.push_back(name + " = " + fmt17(v));
  }

  void write(std::ostream& out) const {
    out << "# ggsum_version = " << kVersion << "\n";
    if (with_rng) {
      out << "# rng = " << Philox4x32::name() << "\n";
      out << "# master_seed = " << master_seed << "\n";
    }
    out << "# config: command = " << cfg->command << "\n";
    for (const auto& [key, value] : cfg->params)
      out << "# config: " << key << " = " << value << "\n";
    for (const auto& s : scalars) out << s << "\n";
    if (!columns.empty()) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << columns[i];
      out << "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          out << (i ? "," : "") << fmt17(row[i]);
        out << "\n";
      }
    }
    for (const auto& t : trailers) out << "# " << t << "\n";
  }
};

void append_curve_column(Report& rep, const MetricCurve& curve, bool first,
                         bool with_stderr) {
  if (first) {
    rep.rows.assign(curve.points.size(), {});
    for (std::size_t i = 0; i < curve.points.size(); ++i)
      rep.rows[i].push_back(curve.points[i].abscissa_db);
  }
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    rep.rows[i].push_back(curve.points[i].value);
    if (with_stderr)
      rep.rows[i].push_back(curve.points[i].std_error.value_or(0.0));
  }
}

// ---------------------------------------------------------------------------
// command handlers

void handle_dist(const std::string& verb, Params& p, Report& rep) {
  const GGParams gg = gg_from(p);
  if (verb == "pdf") {
    const double x = p.number("x");
    if (p.flag("log"))
      rep.scalar("log_pdf", gg_log_pdf(gg, x));
    else
      rep.scalar("pdf", gg_pdf(gg, x));
  } else if (verb == "cdf") {
    rep.scalar("cdf", gg_cdf(gg, p.number("x"), quad_from(p)));
  } else {  // moment
    rep.scalar("moment", gg_moment(gg, p.number("n")));
  }
}

void handle_sum_approx_iid(Params& p, Report& rep) {
  const IIDSumSpec spec{int(p.integer("L")), gg_from(p)};
  const GGParams out = approx_sum_iid(spec);
  rep.scalar("k_T", out.k);
  rep.scalar("m_T", out.m);
  rep.scalar("omega_T", out.omega);
  const double hi = std::max(spec.base.k, spec.base.m);
  rep.scalar("adjustment", std::max(out.k, out.m) - spec.L * hi);
}

INIDSumSpec inid_from(Params& p) {
  const double k = p.number("k-common");
  const auto m_list = p.int_list("m-list");
  const auto omega_list = p.list("omega-list");
  if (m_list.size() != omega_list.size())
    throw ValidationError("m-list and omega-list must have equal length");
  INIDSumSpec spec{k, {}};
  for (std::size_t i = 0; i < m_list.size(); ++i)
    spec.variates.push_back({m_list[i], omega_list[i]});
  return spec;
}

void handle_sum_approx_inid(Params& p, Report& rep) {
  const INIDSumSpec spec = inid_from(p);
  const GGMixture mix = approx_sum_inid(spec, p.flag("swap-roles"));
  rep.columns = {"i", "j", "weight", "k", "m", "omega"};
  for (const auto& c : mix.components)
    rep.rows.push_back({double(c.i), double(c.j), c.weight, c.params.k,
                        c.params.m, c.params.omega});
  rep.trailers.push_back("weight_sum = " + fmt17(mix.weight_sum()));
  rep.trailers.push_back("mixture_mean = " + fmt17(mix.mean()));
  if (!mix.warning.empty()) rep.trailers.push_back("warning: " + mix.warning);
}

void handle_sum_moments(Params& p, Report& rep) {
  const int nu_max = int(p.integer("nu-max", 4));
  std::vector<double> moments;
  if (p.has("k-common"))
    moments = sum_moments_exact(inid_from(p), nu_max);
  else
    moments = sum_moments_exact(IIDSumSpec{int(p.integer("L")), gg_from(p)},
                                nu_max);
  rep.columns = {"nu", "moment"};
  for (int nu = 1; nu <= nu_max; ++nu)
    rep.rows.push_back({double(nu), moments[nu - 1]});
}

void handle_sum_error_stats(Params& p, Report& rep) {
  const IIDSumSpec spec{int(p.integer("L")), gg_from(p)};
  const ErrorMoments em = error_moments(spec);
  rep.scalar("mean", em.mean);
  rep.scalar("variance", em.variance);
  if (p.has("samples")) {
    const auto n = std::uint64_t(p.number("samples"));
    const auto seed = std::uint64_t(p.integer("seed", 1));
    const MCErrorMoments mce = mc_error_moments(spec, n, seed);
    rep.with_rng = true;
    rep.master_seed = seed;
    rep.scalar("mc_mean", mce.mean);
    rep.scalar("mc_mean_stderr", mce.mean_std_error);
    rep.scalar("mc_variance", mce.variance);
    rep.scalar("mc_variance_stderr", mce.variance_std_error);
  }
}

Modulation mod_from(Params& p) {
  const std::string m = p.str("mod", "bpsk");
  if (m == "bpsk") return Modulation::kBpsk;
  if (m == "dbpsk") return Modulation::kDbpsk;
  throw ValidationError("mod must be bpsk or dbpsk");
}

void handle_rf(const std::string& verb, Params& p, Report& rep, bool mc_only) {
  const MRCConfig cfg = mrc_from(p);
  const QuadSpec q = mc_only ? QuadSpec{} : quad_from(p);
  std::optional<std::vector<double>> sweep;
  if (p.has("sweep")) sweep = parse_sweep(p.raw("sweep"));

  const bool is_ber = verb == "ber";
  const RFMetric metric =
      is_ber ? RFMetric::ber(mod_from(p)) : RFMetric::outage();

  if (mc_only) {
    const MCSpec mc = mc_from(p);
    rep.with_rng = true;
    rep.master_seed = mc.master_seed;
    if (sweep) {
      const MetricCurve curve = mc_rf_curve(cfg, *sweep, metric, mc);
      rep.columns = {is_ber ? "snr_db" : "nth_db",
                     is_ber ? "ber_mc" : "outage_mc", "mc_stderr"};
      append_curve_column(rep, curve, true, true);
    } else {
      double gamma_th = 0.0;
      if (!is_ber)
        gamma_th = db_to_linear(p.number("gth-db")) * cfg.gamma_bar_1();
      const MCEstimate est = mc_rf_metric(cfg, metric, gamma_th, mc);
      rep.scalar(is_ber ? "ber_mc" : "outage_mc", est.value);
      rep.scalar("mc_stderr", est.std_error);
    }
    return;
  }

  if (sweep) {
    const MetricCurve curve = rf_curve(cfg, *sweep, metric, q);
    rep.columns = {is_ber ? "snr_db" : "nth_db", is_ber ? "ber" : "outage"};
    append_curve_column(rep, curve, true, false);
  } else if (is_ber) {
    rep.scalar("ber", rf_ber(cfg, metric.mod, q));
  } else {
    const double gamma_th =
        db_to_linear(p.number("gth-db")) * cfg.gamma_bar_1();
    rep.scalar("outage", rf_outage(cfg, gamma_th, q));
  }
}

void handle_ow(const std::string& verb, Params& p, Report& rep, bool mc_only) {
  const OWConfig cfg = ow_from(p);
  const QuadSpec q = mc_only ? QuadSpec{} : quad_from(p);
  std::optional<std::vector<double>> sweep;
  if (p.has("sweep")) sweep = parse_sweep(p.raw("sweep"));

  const bool is_ber = verb == "ber";
  const OWMetric metric = is_ber ? OWMetric::ber() : OWMetric::outage();

  if (mc_only) {
    const MCSpec mc = mc_from(p);
    rep.with_rng = true;
    rep.master_seed = mc.master_seed;
    if (sweep) {
      const MetricCurve curve = mc_ow_curve(cfg, *sweep, metric, mc);
      rep.columns = {is_ber ? "mu_db" : "nth_db",
                     is_ber ? "ber_mc" : "outage_mc", "mc_stderr"};
      append_curve_column(rep, curve, true, true);
    } else {
      double h_th = 0.0;
      if (!is_ber) h_th = db_to_linear(p.number("hth-db")) * cfg.mu_1();
      const MCEstimate est = mc_ow_metric(cfg, metric, h_th, mc);
      rep.scalar(is_ber ? "ber_mc" : "outage_mc", est.value);
      rep.scalar("mc_stderr", est.std_error);
    }
    return;
  }

  if (sweep) {
    const MetricCurve curve = ow_curve(cfg, *sweep, metric, q);
    rep.columns = {is_ber ? "mu_db" : "nth_db", is_ber ? "ber" : "outage"};
    append_curve_column(rep, curve, true, false);
  } else if (is_ber) {
    rep.scalar("ber", ow_ber(cfg, q));
  } else {
    const double h_th = db_to_linear(p.number("hth-db")) * cfg.mu_1();
    rep.scalar("outage", ow_outage(cfg, h_th, q));
  }
}

void handle_compare(const std::string& what, Params& p, Report& rep) {
  const auto sweep = parse_sweep(p.raw("sweep"));
  const MCSpec mc = mc_from(p);
  const QuadSpec q = quad_from(p);
  const double target = p.number("gap-target", 1e-4);
  rep.with_rng = true;
  rep.master_seed = mc.master_seed;

  MetricCurve analytic, simulated;
  std::string abscissa, metric_name;
  if (what == "rf-ber" || what == "rf-outage") {
    const MRCConfig cfg = mrc_from(p);
    const bool is_ber = what == "rf-ber";
    const RFMetric metric =
        is_ber ? RFMetric::ber(mod_from(p)) : RFMetric::outage();
    analytic = rf_curve(cfg, sweep, metric, q);
    simulated = mc_rf_curve(cfg, sweep, metric, mc);
    abscissa = is_ber ? "snr_db" : "nth_db";
    metric_name = is_ber ? "ber" : "outage";
  } else if (what == "ow-ber" || what == "ow-outage") {
    const OWConfig cfg = ow_from(p);
    const bool is_ber = what == "ow-ber";
    const OWMetric metric = is_ber ? OWMetric::ber() : OWMetric::outage();
    analytic = ow_curve(cfg, sweep, metric, q);
    simulated = mc_ow_curve(cfg, sweep, metric, mc);
    abscissa = is_ber ? "mu_db" : "nth_db";
    metric_name = is_ber ? "ber" : "outage";
  } else {
    throw ValidationError("compare: unknown metric '" + what + "'");
  }

  rep.columns = {abscissa, metric_name + "_analytic", metric_name + "_mc",
                 "mc_stderr"};
  rep.rows.assign(sweep.size(), {});
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    rep.rows[i] = {sweep[i], analytic.points[i].value,
                   simulated.points[i].value,
                   simulated.points[i].std_error.value_or(0.0)};
  }
  char label[64];
  std::snprintf(label, sizeof label, "gap_db@%g", target);
  try {
    rep.trailers.push_back(std::string(label) + " = " +
                           fmt17(gap_in_db(analytic, simulated, target)));
  } catch (const ValidationError& e) {
    rep.trailers.push_back(std::string(label) + " = n/a (" + e.what() + ")");
  }
}

// canned sweeps reproducing the published experiment protocol
void handle_repro(const std::string& fig, Params& p, Report& rep) {
  const bool with_mc = p.flag("with-mc");
  const MCSpec mc = mc_from(p);
  if (with_mc) {
    rep.with_rng = true;
    rep.master_seed = mc.master_seed;
  }
  const QuadSpec q;

  auto sweep_of = [](double a, double b, double s) {
    std::vector<double> v;
    for (double x = a; x <= b + 1e-9; x += s) v.push_back(x);
    return v;
  };

  struct Curve {
    std::string label;
    MRCConfig rf;
    OWConfig ow;
    bool is_rf;
    RFMetric rf_metric;
    OWMetric ow_metric;
  };
  std::vector<Curve> curves;
  std::vector<double> sweep;
  std::string abscissa;

  auto add_rf = [&](const std::string& label, const MRCConfig& cfg,
                    const RFMetric& m) {
    curves.push_back({label, cfg, OWConfig::iid(1, 1, 1.0, 1.0), true, m, {}});
  };
  auto add_ow = [&](const std::string& label, const OWConfig& cfg,
                    const OWMetric& m) {
    curves.push_back(
        {label, MRCConfig::iid(1, 1.0, 1.0, 1.0), cfg, false, {}, m});
  };

  const std::vector<int> m_ladder{1, 2, 3};
  if (fig == "fig1" || fig == "fig2") {
    const bool ber = fig == "fig1";
    sweep = ber ? sweep_of(0, 30, 2) : sweep_of(-10, 20, 2);
    abscissa = ber ? "snr_db" : "nth_db";
    for (int L : {1, 2, 3, 4}) {
      const MRCConfig cfg = MRCConfig::iid(L, 2.0, 5.0, 1.0);
      if (ber) {
        add_rf("bpsk_L" + std::to_string(L), cfg,
               RFMetric::ber(Modulation::kBpsk));
        add_rf("dbpsk_L" + std::to_string(L), cfg,
               RFMetric::ber(Modulation::kDbpsk));
      } else {
        add_rf("outage_L" + std::to_string(L), cfg, RFMetric::outage());
      }
    }
  } else if (fig == "fig3" || fig == "fig4" || fig == "fig5" || fig == "fig6") {
    const bool ber = fig == "fig3" || fig == "fig4";
    const double delta = (fig == "fig3" || fig == "fig5") ? 0.5 : 1.0;
    sweep = ber ? sweep_of(0, 40, 2) : sweep_of(-10, 30, 2);
    abscissa = ber ? "snr_db" : "nth_db";
    for (int L : {2, 3}) {
      const std::vector<int> m(m_ladder.begin(), m_ladder.begin() + L);
      const MRCConfig cfg = MRCConfig::exponential_profile(2.0, m, 1.0, delta);
      if (ber) {
        add_rf("bpsk_L" + std::to_string(L), cfg,
               RFMetric::ber(Modulation::kBpsk));
        add_rf("dbpsk_L" + std::to_string(L), cfg,
               RFMetric::ber(Modulation::kDbpsk));
      } else {
        add_rf("outage_L" + std::to_string(L), cfg, RFMetric::outage());
      }
    }
  } else if (fig == "fig7" || fig == "fig8") {
    const bool ber = fig == "fig7";
    sweep = ber ? sweep_of(0, 50, 2.5) : sweep_of(-30, 20, 2.5);
    abscissa = ber ? "mu_db" : "nth_db";
    for (double a : {4.0, 10.0})
      for (auto [M, N] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
        const OWConfig cfg = OWConfig::iid(M, N, a, 1.0);
        const std::string label = (ber ? "ber" : "outage") +
                                  std::string("_a") + std::to_string(int(a)) +
                                  "_m" + std::to_string(M) + "n" +
                                  std::to_string(N);
        add_ow(label, cfg, ber ? OWMetric::ber() : OWMetric::outage());
      }
  } else if (fig == "fig9" || fig == "fig10") {
    const bool ber = fig == "fig9";
    sweep = ber ? sweep_of(0, 55, 2.5) : sweep_of(-30, 25, 2.5);
    abscissa = ber ? "mu_db" : "nth_db";
    auto geo = [](std::vector<int> a) {
      std::vector<OWLinkINID> links;
      double w = 1.0;
      for (int ai : a) {
        links.push_back({ai, w});
        w *= 0.7;
      }
      return links;
    };
    const std::vector<std::tuple<int, int, std::vector<int>>> deployments{
        {2, 1, {2, 3}}, {3, 1, {2, 3, 4}}, {2, 2, {2, 3, 4, 2}}};
    for (const auto& [M, N, a] : deployments) {
      const OWConfig cfg = OWConfig::inid(M, N, geo(a));
      const std::string label = (ber ? "ber" : "outage") + std::string("_m") +
                                std::to_string(M) + "n" + std::to_string(N);
      add_ow(label, cfg, ber ? OWMetric::ber() : OWMetric::outage());
    }
  } else {
    throw ValidationError("repro: unknown figure '" + fig + "'");
  }

  rep.columns = {abscissa};
  bool first = true;
  for (const auto& c : curves) {
    rep.columns.push_back(c.label);
    MetricCurve analytic = c.is_rf ? rf_curve(c.rf, sweep, c.rf_metric, q)
                                   : ow_curve(c.ow, sweep, c.ow_metric, q);
    append_curve_column(rep, analytic, first, false);
    first = false;
    if (with_mc) {
      rep.columns.push_back(c.label + "_mc");
      rep.columns.push_back(c.label + "_mc_stderr");
      MetricCurve sim = c.is_rf ? mc_rf_curve(c.rf, sweep, c.rf_metric, mc)
                                : mc_ow_curve(c.ow, sweep, c.ow_metric, mc);
      append_curve_column(rep, sim, false, true);
    }
  }
}

}  // namespace

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::pair<std::string, std::vector<OptionSpec>>>&
command_schemas() {
  static const std::vector<OptionSpec> gg{{"k", "shape k"},
                                          {"m", "shape m"},
                                          {"omega", "mean"}};
  static const std::vector<OptionSpec> quad{
      {"rel-tol", "quadrature relative tolerance"},
      {"abs-tol", "quadrature absolute tolerance"},
      {"max-refinements", "quadrature split budget"},
      {"tail-mass-tol", "tail mass allowed beyond truncation"}};
  static const std::vector<OptionSpec> mcopts{
      {"samples", "Monte-Carlo sample count"},
      {"seed", "master seed"},
      {"chunk-size", "samples per stream chunk"}};
  static const std::vector<OptionSpec> rf_branches{
      {"k", "common shadowing shape"},
      {"L", "branch count (identical branches)"},
      {"m", "multipath shape (identical branches)"},
      {"gbar-db", "mean branch SNR in dB (identical branches)"},
      {"m-list", "per-branch integer shapes, comma-separated"},
      {"gbar-db-list", "per-branch mean SNRs in dB"},
      {"gbar1-db", "first-branch mean SNR in dB"},
      {"delta", "exponential decay factor"}};
  static const std::vector<OptionSpec> ow_links{
      {"M", "transmit apertures"},
      {"N", "receive apertures"},
      {"a", "turbulence shape (identical links)"},
      {"io", "mean irradiance per link (identical links)"},
      {"a-list", "per-link integer shapes"},
      {"omega-list", "per-link mean irradiances"},
      {"eta", "optical-to-electrical conversion coefficient"},
      {"n0", "noise spectral density"},
      {"mu-db", "first-link electrical SNR in dB (alternative to n0)"}};

  auto cat = [](std::initializer_list<std::vector<OptionSpec>> parts,
                std::initializer_list<OptionSpec> extra = {}) {
    std::vector<OptionSpec> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  };

  static const std::vector<std::pair<std::string, std::vector<OptionSpec>>>
      table = [&] {
        std::vector<std::pair<std::string, std::vector<OptionSpec>>> t;
        t.emplace_back("dist pdf",
                       cat({gg}, {{"x", "evaluation point"},
                                  {"log", "emit the log-density", true}}));
        t.emplace_back("dist cdf", cat({gg, quad}, {{"x", "evaluation point"}}));
        t.emplace_back("dist moment", cat({gg}, {{"n", "moment order"}}));
        t.emplace_back("sum approx-iid",
                       cat({gg}, {{"L", "number of variates"}}));
        t.emplace_back(
            "sum approx-inid",
            std::vector<OptionSpec>{
                {"k-common", "shared shape"},
                {"m-list", "per-variate integer shapes"},
                {"omega-list", "per-variate means"},
                {"swap-roles", "interchange the shape labels", true}});
        t.emplace_back("sum moments",
                       cat({gg}, {{"L", "number of variates"},
                                  {"k-common", "shared shape (non-identical)"},
                                  {"m-list", "per-variate integer shapes"},
                                  {"omega-list", "per-variate means"},
                                  {"nu-max", "highest moment order"}}));
        t.emplace_back("sum error-stats",
                       cat({gg}, {{"L", "number of variates"},
                                  {"samples", "verify empirically with this many draws"},
                                  {"seed", "master seed"}}));
        t.emplace_back("rf ber",
                       cat({rf_branches, quad},
                           {{"mod", "bpsk or dbpsk"},
                            {"sweep", "start:stop:step of gamma_bar_1 in dB"}}));
        t.emplace_back(
            "rf outage",
            cat({rf_branches, quad},
                {{"gth-db", "threshold over gamma_bar_1 in dB"},
                 {"sweep", "start:stop:step of the normalized threshold in dB"}}));
        t.emplace_back("ow ber",
                       cat({ow_links, quad},
                           {{"sweep", "start:stop:step of mu_1 in dB"}}));
        t.emplace_back(
            "ow outage",
            cat({ow_links, quad},
                {{"hth-db", "threshold over mu_1 in dB"},
                 {"sweep", "start:stop:step of the normalized threshold in dB"}}));
        t.emplace_back("mc rf-ber",
                       cat({rf_branches, mcopts},
                           {{"mod", "bpsk or dbpsk"},
                            {"sweep", "start:stop:step of gamma_bar_1 in dB"}}));
        t.emplace_back(
            "mc rf-outage",
            cat({rf_branches, mcopts},
                {{"gth-db", "threshold over gamma_bar_1 in dB"},
                 {"sweep", "start:stop:step of the normalized threshold in dB"}}));
        t.emplace_back("mc ow-ber",
                       cat({ow_links, mcopts},
                           {{"sweep", "start:stop:step of mu_1 in dB"}}));
        t.emplace_back(
            "mc ow-outage",
            cat({ow_links, mcopts},
                {{"hth-db", "threshold over mu_1 in dB"},
                 {"sweep", "start:stop:step of the normalized threshold in dB"}}));
        for (const char* m : {"rf-ber", "rf-outage", "ow-ber", "ow-outage"}) {
          const bool rf = m[0] == 'r';
          t.emplace_back(
              std::string("compare ") + m,
              cat({rf ? rf_branches : ow_links, quad, mcopts},
                  {{"mod", "bpsk or dbpsk (BER metrics)"},
                   {"sweep", "start:stop:step in dB"},
                   {"gap-target", "metric level for the horizontal gap"}}));
        }
        for (int i = 1; i <= 10; ++i)
          t.emplace_back("repro fig" + std::to_string(i),
                         cat({mcopts},
                             {{"with-mc", "add Monte-Carlo overlay columns",
                               true}}));
        return t;
      }();
  return table;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(ss, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line is not key = value: " + t);
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ValidationError("config line with empty key: " + t);
    if (!kv.emplace(key, value).second)
      throw ValidationError("duplicate config key: " + key);
  }
  return kv;
}

RunConfig parse_config_echo(const std::string& report) {
  RunConfig cfg;
  std::stringstream ss(report);
  std::string line;
  const std::string prefix = "# config: ";
  while (std::getline(ss, line)) {
    if (line.rfind(prefix, 0) != 0) continue;
    const std::string body = line.substr(prefix.size());
    const auto eq = body.find(" = ");
    if (eq == std::string::npos)
      throw ValidationError("malformed config echo: " + line);
    const std::string key = body.substr(0, eq);
    const std::string value = body.substr(eq + 3);
    if (key == "command")
      cfg.command = value;
    else
      cfg.params[key] = value;
  }
  if (cfg.command.empty())
    throw ValidationError("report carries no config echo");
  return cfg;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    // validate the key set against the command schema before any computation
    const auto& schemas = command_schemas();
    const auto schema =
        std::find_if(schemas.begin(), schemas.end(),
                     [&](const auto& s) { return s.first == cfg.command; });
    if (schema == schemas.end())
      throw ValidationError("unknown command '" + cfg.command + "'");
    for (const auto& [key, value] : cfg.params) {
      (void)value;
      const bool known = std::any_of(
          schema->second.begin(), schema->second.end(),
          [&](const OptionSpec& o) { return key == o.key; });
      if (!known)
        throw ValidationError("unknown parameter '" + key + "' for '" +
                              cfg.command + "'");
    }

    Params p(cfg.params);
    Report rep;
    rep.cfg = &cfg;

    std::stringstream cs(cfg.command);
    std::string group, verb;
    cs >> group >> verb;

    if (group == "dist" && (verb == "pdf" || verb == "cdf" || verb == "moment")) {
      handle_dist(verb, p, rep);
    } else if (group == "sum" && verb == "approx-iid") {
      handle_sum_approx_iid(p, rep);
    } else if (group == "sum" && verb == "approx-inid") {
      handle_sum_approx_inid(p, rep);
    } else if (group == "sum" && verb == "moments") {
      handle_sum_moments(p, rep);
    } else if (group == "sum" && verb == "error-stats") {
      handle_sum_error_stats(p, rep);
    } else if (group == "rf" && (verb == "ber" || verb == "outage")) {
      handle_rf(verb, p, rep, false);
    } else if (group == "ow" && (verb == "ber" || verb == "outage")) {
      handle_ow(verb, p, rep, false);
    } else if (group == "mc" && (verb == "rf-ber" || verb == "rf-outage")) {
      handle_rf(verb.substr(3), p, rep, true);
    } else if (group == "mc" && (verb == "ow-ber" || verb == "ow-outage")) {
      handle_ow(verb.substr(3), p, rep, true);
    } else if (group == "compare") {
      handle_compare(verb, p, rep);
    } else if (group == "repro") {
      handle_repro(verb, p, rep);
    } else {
      throw ValidationError("unknown command '" + cfg.command + "'");
    }

    p.finish();
    rep.write(out);
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ggsum::cli
