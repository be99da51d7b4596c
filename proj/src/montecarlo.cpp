#include "ggsum/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ggsum/errors.hpp"
#include "ggsum/specfun.hpp"

namespace ggsum {

void MCSpec::validate() const {
  if (n_samples < 1) throw ValidationError("MCSpec: n_samples must be >= 1");
  if (chunk_size < 1) throw ValidationError("MCSpec: chunk_size must be >= 1");
}

namespace {

std::atomic<unsigned> g_max_threads{0};

unsigned worker_count(std::uint64_t n_chunks) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned cap = g_max_threads.load();
  if (cap != 0) hw = std::min(hw, cap);
  return unsigned(std::min<std::uint64_t>(hw, n_chunks));
}

// Runs fn(chunk_index, rng, n_in_chunk, slot) over all chunks; slots are
// pre-sized so each chunk writes only its own entry, and the caller reduces
// them in index order.
template <typename Slot, typename Fn>
std::vector<Slot> run_chunks(const MCSpec& mc, Fn&& fn) {
  mc.validate();
  const std::uint64_t n_chunks = (mc.n_samples + mc.chunk_size - 1) / mc.chunk_size;
  std::vector<Slot> slots(n_chunks);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::uint64_t idx = next.fetch_add(1);
      if (idx >= n_chunks) return;
      const std::uint64_t begin = idx * mc.chunk_size;
      const std::uint64_t count =
          std::min<std::uint64_t>(mc.chunk_size, mc.n_samples - begin);
      Philox4x32 rng(mc.master_seed, idx);
      fn(idx, rng, count, slots[idx]);
    }
  };
  const unsigned workers = worker_count(n_chunks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return slots;
}

struct MeanAccum {
  double sum = 0.0;
  double sum_sq = 0.0;
};

MCEstimate reduce_mean(const std::vector<MeanAccum>& slots, const MCSpec& mc) {
  double s = 0.0, s2 = 0.0;
  for (const auto& a : slots) {
    s += a.sum;
    s2 += a.sum_sq;
  }
  const double n = double(mc.n_samples);
  const double mean = s / n;
  const double var = std::max(0.0, s2 / n - mean * mean);
  return {mean, std::sqrt(var / n), mc.n_samples, mc.master_seed};
}

MCEstimate reduce_indicator(const std::vector<std::uint64_t>& counts,
                            const MCSpec& mc) {
  std::uint64_t hits = 0;
  for (const auto c : counts) hits += c;
  const double n = double(mc.n_samples);
  const double p = double(hits) / n;
  return {p, std::sqrt(std::max(0.0, p * (1.0 - p)) / n), mc.n_samples,
          mc.master_seed};
}

// Per-branch normalized samplers: unit-mean GG factors; the caller applies
// the mean profile.
struct NormalizedSum {
  std::vector<GGParams> laws;    // unit-mean per-variate laws
  std::vector<double> weights;   // per-variate means

  double draw(Philox4x32& rng) const {
    double s = 0.0;
    for (std::size_t l = 0; l < laws.size(); ++l)
      s += weights[l] * gg_sample(laws[l], rng);
    return s;
  }
};

NormalizedSum normalized_rf(const MRCConfig& cfg) {
  cfg.validate();
  NormalizedSum ns;
  if (cfg.is_iid()) {
    const auto& b = std::get<MRCBranchesIID>(cfg.branches);
    for (int l = 0; l < b.L; ++l) {
      ns.laws.push_back({cfg.k_common, b.m, 1.0});
      ns.weights.push_back(b.gamma_bar);
    }
  } else {
    for (const auto& b : std::get<std::vector<MRCBranchINID>>(cfg.branches)) {
      ns.laws.push_back({cfg.k_common, double(b.m), 1.0});
      ns.weights.push_back(b.gamma_bar);
    }
  }
  return ns;
}

NormalizedSum normalized_ow(const OWConfig& cfg) {
  cfg.validate();
  NormalizedSum ns;
  if (cfg.is_iid()) {
    const auto& l = std::get<OWLinksIID>(cfg.links);
    for (int i = 0; i < cfg.link_count(); ++i) {
      ns.laws.push_back({1.0, l.a, 1.0});
      ns.weights.push_back(l.I_o);
    }
  } else {
    for (const auto& l : std::get<std::vector<OWLinkINID>>(cfg.links)) {
      ns.laws.push_back({1.0, double(l.a), 1.0});
      ns.weights.push_back(l.omega);
    }
  }
  return ns;
}

template <typename SpecT>
NormalizedSum normalized_sum_spec(const SpecT& spec);

template <>
NormalizedSum normalized_sum_spec(const IIDSumSpec& spec) {
  spec.validate();
  NormalizedSum ns;
  for (int l = 0; l < spec.L; ++l) {
    ns.laws.push_back({spec.base.k, spec.base.m, 1.0});
    ns.weights.push_back(spec.base.omega);
  }
  return ns;
}

template <>
NormalizedSum normalized_sum_spec(const INIDSumSpec& spec) {
  spec.validate();
  NormalizedSum ns;
  for (const auto& v : spec.variates) {
    ns.laws.push_back({spec.k_common, double(v.m), 1.0});
    ns.weights.push_back(v.omega);
  }
  return ns;
}

template <typename SpecT>
std::vector<double> mc_sum_cdf_impl(const SpecT& spec,
                                    std::span<const double> pts,
                                    const MCSpec& mc) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i] >= pts[i - 1]))
      throw ValidationError("mc_sum_cdf: evaluation points must be sorted");
  const NormalizedSum ns = normalized_sum_spec(spec);

  using Hist = std::vector<std::uint64_t>;
  auto slots = run_chunks<Hist>(
      mc, [&](std::uint64_t, Philox4x32& rng, std::uint64_t count, Hist& hist) {
        hist.assign(pts.size() + 1, 0);
        for (std::uint64_t i = 0; i < count; ++i) {
          const double s = ns.draw(rng);
          const auto it = std::lower_bound(pts.begin(), pts.end(), s);
          ++hist[std::size_t(it - pts.begin())];
        }
      });

  std::vector<std::uint64_t> hist(pts.size() + 1, 0);
  for (const auto& h : slots)
    for (std::size_t i = 0; i < h.size(); ++i) hist[i] += h[i];
  std::vector<double> cdf(pts.size());
  std::uint64_t below = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    below += hist[i];
    cdf[i] = double(below) / double(mc.n_samples);
  }
  return cdf;
}

// Shared sweep evaluator: draws the normalized sum once per sample and folds
// it into every abscissa's accumulator.
struct SweepAccum {
  std::vector<double> sum;
  std::vector<double> sum_sq;
  std::vector<std::uint64_t> hits;
};

template <typename FoldFn>
MetricCurve sweep_curve(const NormalizedSum& ns, std::span<const double> sweep_db,
                        bool indicator, const MCSpec& mc, FoldFn&& fold) {
  if (sweep_db.empty()) throw ValidationError("mc curve: empty sweep");
  for (std::size_t i = 1; i < sweep_db.size(); ++i)
    if (!(sweep_db[i] > sweep_db[i - 1]))
      throw ValidationError("mc curve: sweep must be strictly increasing");
  const std::size_t np = sweep_db.size();

  auto slots = run_chunks<SweepAccum>(
      mc,
      [&](std::uint64_t, Philox4x32& rng, std::uint64_t count, SweepAccum& acc) {
        if (indicator) {
          acc.hits.assign(np, 0);
        } else {
          acc.sum.assign(np, 0.0);
          acc.sum_sq.assign(np, 0.0);
        }
        for (std::uint64_t i = 0; i < count; ++i) {
          const double s = ns.draw(rng);
          fold(s, acc);
        }
      });

  MetricCurve curve;
  const double n = double(mc.n_samples);
  for (std::size_t p = 0; p < np; ++p) {
    double value, stderr_;
    if (indicator) {
      std::uint64_t hits = 0;
      for (const auto& a : slots) hits += a.hits[p];
      value = double(hits) / n;
      stderr_ = std::sqrt(std::max(0.0, value * (1.0 - value)) / n);
    } else {
      double s = 0.0, s2 = 0.0;
      for (const auto& a : slots) {
        s += a.sum[p];
        s2 += a.sum_sq[p];
      }
      value = s / n;
      stderr_ = std::sqrt(std::max(0.0, s2 / n - value * value) / n);
    }
    curve.points.push_back({sweep_db[p], value, stderr_});
  }
  return curve;
}

}  // namespace

void set_mc_max_threads(unsigned n) { g_max_threads.store(n); }

std::vector<double> mc_sum_cdf(const IIDSumSpec& spec,
                               std::span<const double> pts, const MCSpec& mc) {
  return mc_sum_cdf_impl(spec, pts, mc);
}

std::vector<double> mc_sum_cdf(const INIDSumSpec& spec,
                               std::span<const double> pts, const MCSpec& mc) {
  return mc_sum_cdf_impl(spec, pts, mc);
}

MCEstimate mc_rf_metric(const MRCConfig& cfg, const RFMetric& metric,
                        double gamma_th, const MCSpec& mc) {
  const NormalizedSum ns = normalized_rf(cfg);
  if (metric.kind == RFMetric::Kind::kBer) {
    const Modulation mod = metric.mod;
    auto slots = run_chunks<MeanAccum>(
        mc, [&](std::uint64_t, Philox4x32& rng, std::uint64_t count, MeanAccum& a) {
          for (std::uint64_t i = 0; i < count; ++i) {
            const double k = conditional_ber(mod, ns.draw(rng));
            a.sum += k;
            a.sum_sq += k * k;
          }
        });
    return reduce_mean(slots, mc);
  }
  if (!(gamma_th > 0.0))
    throw ValidationError("mc_rf_metric: outage threshold must be positive");
  auto slots = run_chunks<std::uint64_t>(
      mc, [&](std::uint64_t, Philox4x32& rng, std::uint64_t count, std::uint64_t& h) {
        h = 0;
        for (std::uint64_t i = 0; i < count; ++i)
          if (ns.draw(rng) <= gamma_th) ++h;
      });
  return reduce_indicator(slots, mc);
}

MetricCurve mc_rf_curve(const MRCConfig& cfg, std::span<const double> sweep_db,
                        const RFMetric& metric, const MCSpec& mc) {
  // the profile is normalized so the first branch has unit mean; each
  // abscissa then scales the whole profile (BER) or moves the threshold
  // relative to it (outage)
  NormalizedSum ns = normalized_rf(cfg);
  const double g1 = cfg.gamma_bar_1();
  for (auto& w : ns.weights) w /= g1;

  std::vector<double> lin(sweep_db.size());
  std::transform(sweep_db.begin(), sweep_db.end(), lin.begin(), db_to_linear);

  if (metric.kind == RFMetric::Kind::kBer) {
    const Modulation mod = metric.mod;
    return sweep_curve(ns, sweep_db, false, mc, [&](double s, SweepAccum& a) {
      for (std::size_t p = 0; p < lin.size(); ++p) {
        const double k = conditional_ber(mod, lin[p] * s);
        a.sum[p] += k;
        a.sum_sq[p] += k * k;
      }
    });
  }
  return sweep_curve(ns, sweep_db, true, mc, [&](double s, SweepAccum& a) {
    for (std::size_t p = 0; p < lin.size(); ++p)
      if (s <= lin[p]) ++a.hits[p];
  });
}

MCEstimate mc_ow_metric(const OWConfig& cfg, const OWMetric& metric, double h_th,
                        const MCSpec& mc) {
  const NormalizedSum ns = normalized_ow(cfg);
  if (metric.kind == OWMetric::Kind::kBer) {
    const double coeff = cfg.eta / (2.0 * cfg.M * cfg.N * std::sqrt(cfg.N_o));
    auto slots = run_chunks<MeanAccum>(
        mc, [&](std::uint64_t, Philox4x32& rng, std::uint64_t count, MeanAccum& a) {
          for (std::uint64_t i = 0; i < count; ++i) {
            const double k = 0.5 * specfun::erfc(coeff * ns.draw(rng));
            a.sum += k;
            a.sum_sq += k * k;
          }
        });
    return reduce_mean(slots, mc);
  }
  if (!(h_th > 0.0))
    throw ValidationError("mc_ow_metric: outage threshold must be positive");
  const double i_th = cfg.M * cfg.N / cfg.eta * std::sqrt(h_th * cfg.N_o);
  auto slots = run_chunks<std::uint64_t>(
      mc, [&](std::uint64_t, Philox4x32& rng, std::uint64_t count, std::uint64_t& h) {
        h = 0;
        for (std::uint64_t i = 0; i < count; ++i)
          if (ns.draw(rng) <= i_th) ++h;
      });
  return reduce_indicator(slots, mc);
}

MetricCurve mc_ow_curve(const OWConfig& cfg, std::span<const double> sweep_db,
                        const OWMetric& metric, const MCSpec& mc) {
  // normalized aggregate u = I_T / omega_1
  NormalizedSum ns = normalized_ow(cfg);
  const double w1 = cfg.omega_1();
  for (auto& w : ns.weights) w /= w1;

  std::vector<double> lin(sweep_db.size());
  std::transform(sweep_db.begin(), sweep_db.end(), lin.begin(), db_to_linear);
  const double mn = double(cfg.M) * double(cfg.N);

  if (metric.kind == OWMetric::Kind::kBer) {
    // abscissa = mu_1; erfc argument sqrt(mu_1) u / (2 M N)
    std::vector<double> coeff(lin.size());
    for (std::size_t p = 0; p < lin.size(); ++p)
      coeff[p] = std::sqrt(lin[p]) / (2.0 * mn);
    return sweep_curve(ns, sweep_db, false, mc, [&](double u, SweepAccum& a) {
      for (std::size_t p = 0; p < coeff.size(); ++p) {
        const double k = 0.5 * specfun::erfc(coeff[p] * u);
        a.sum[p] += k;
        a.sum_sq[p] += k * k;
      }
    });
  }
  // abscissa = h_th / mu_1; threshold in normalized irradiance is
  // M N sqrt(ratio)
  std::vector<double> u_th(lin.size());
  for (std::size_t p = 0; p < lin.size(); ++p) u_th[p] = mn * std::sqrt(lin[p]);
  return sweep_curve(ns, sweep_db, true, mc, [&](double u, SweepAccum& a) {
    for (std::size_t p = 0; p < u_th.size(); ++p)
      if (u <= u_th[p]) ++a.hits[p];
  });
}

namespace {

double crossing_db(const MetricCurve& curve, double target) {
  if (!(target > 0.0)) throw ValidationError("gap_in_db: target must be positive");
  const auto& pts = curve.points;
  if (pts.size() < 2) throw ValidationError("gap_in_db: curve too short");
  const double lt = std::log10(target);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double v0 = pts[i].value, v1 = pts[i + 1].value;
    if (!(v0 > 0.0) || !(v1 > 0.0)) continue;
    const double l0 = std::log10(v0), l1 = std::log10(v1);
    if ((l0 - lt) * (l1 - lt) <= 0.0 && l0 != l1) {
      return pts[i].abscissa_db +
             (pts[i + 1].abscissa_db - pts[i].abscissa_db) * (lt - l0) / (l1 - l0);
    }
  }
  throw ValidationError("gap_in_db: target level " + std::to_string(target) +
                        " is outside the curve's range");
}

}  // namespace

double gap_in_db(const MetricCurve& analytic, const MetricCurve& mc,
                 double target_level) {
  return std::abs(crossing_db(analytic, target_level) -
                  crossing_db(mc, target_level));
}

}  // namespace ggsum
