#include "ggsum/systems_rf.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ggsum/errors.hpp"
#include "ggsum/montecarlo.hpp"

using namespace ggsum;

TEST_CASE("conditional kernels") {
  CHECK(conditional_ber(Modulation::kBpsk, 0.0) == 0.5);
  CHECK(conditional_ber(Modulation::kDbpsk, 0.0) == 0.5);
  for (double g : {0.01, 0.5, 2.0, 10.0}) {
    const double bpsk = conditional_ber(Modulation::kBpsk, g);
    const double dbpsk = conditional_ber(Modulation::kDbpsk, g);
    CHECK(bpsk > 0.0);
    CHECK(bpsk <= 0.5);
    CHECK(dbpsk >= bpsk);  // exp(-g) >= erfc(sqrt(g)) pointwise
  }
}

TEST_CASE("mrc_output_law") {
  // single branch passes through untouched
  const auto single = mrc_output_law(MRCConfig::iid(1, 2.0, 5.0, 3.0));
  REQUIRE(std::holds_alternative<GGParams>(single));
  CHECK(std::get<GGParams>(single).k == 2.0);
  CHECK(std::get<GGParams>(single).m == 5.0);
  CHECK(std::get<GGParams>(single).omega == 3.0);

  const auto two = mrc_output_law(MRCConfig::iid(2, 2.0, 5.0, 1.0));
  REQUIRE(std::holds_alternative<GGParams>(two));
  CHECK(std::get<GGParams>(two).k == doctest::Approx(4.0));
  CHECK(std::get<GGParams>(two).m == doctest::Approx(8.35189).epsilon(1e-5));
  CHECK(std::get<GGParams>(two).omega == doctest::Approx(2.0));

  const auto mix_law =
      mrc_output_law(MRCConfig::inid(1.0, {{1, 1.0}, {1, 2.0}}));
  REQUIRE(std::holds_alternative<GGMixture>(mix_law));
  const auto& mix = std::get<GGMixture>(mix_law);
  REQUIRE(mix.components.size() == 2);
  CHECK(mix.components[0].weight == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(mix.components[1].weight == doctest::Approx(2.0).epsilon(1e-12));

  // equal branches are not a mixture problem
  CHECK_THROWS_AS(mrc_output_law(MRCConfig::inid(2.0, {{5, 1.0}, {5, 1.0}})),
                  IllConditioningError);
}

TEST_CASE("exponential profile expansion") {
  const MRCConfig cfg = MRCConfig::exponential_profile(2.0, {1, 2, 3}, 4.0, 0.5);
  const auto& bs = std::get<std::vector<MRCBranchINID>>(cfg.branches);
  REQUIRE(bs.size() == 3);
  CHECK(bs[0].gamma_bar == doctest::Approx(4.0));
  CHECK(bs[1].gamma_bar == doctest::Approx(4.0 * std::exp(-0.5)));
  CHECK(bs[2].gamma_bar == doctest::Approx(4.0 * std::exp(-1.0)));
  CHECK_THROWS_AS(MRCConfig::exponential_profile(2.0, {1, 2}, 4.0, -0.1),
                  ValidationError);
}

TEST_CASE("rf_ber limits and ordering") {
  const MRCConfig deep = MRCConfig::iid(2, 2.0, 5.0, 1e-9);
  CHECK(rf_ber(deep, Modulation::kBpsk) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(rf_ber(deep, Modulation::kDbpsk) == doctest::Approx(0.5).epsilon(1e-4));

  for (double db : {0.0, 5.0, 10.0, 15.0}) {
    const MRCConfig cfg = MRCConfig::iid(2, 2.0, 5.0, db_to_linear(db));
    CHECK(rf_ber(cfg, Modulation::kDbpsk) >= rf_ber(cfg, Modulation::kBpsk));
  }
  const MRCConfig inid = MRCConfig::exponential_profile(2.0, {1, 2}, 10.0, 0.5);
  CHECK(rf_ber(inid, Modulation::kDbpsk) >= rf_ber(inid, Modulation::kBpsk));
}

TEST_CASE("rf_ber single branch against the MC oracle") {
  const MRCConfig cfg = MRCConfig::iid(1, 2.0, 5.0, db_to_linear(10.0));
  const double analytic = rf_ber(cfg, Modulation::kBpsk);
  const MCSpec mc{101, 1000000};
  const MCEstimate est =
      mc_rf_metric(cfg, RFMetric::ber(Modulation::kBpsk), 0.0, mc);
  CHECK(std::abs(analytic - est.value) <= 3.0 * est.std_error);
}

TEST_CASE("rf_outage basics") {
  const MRCConfig cfg = MRCConfig::iid(2, 2.0, 5.0, 1.0);
  CHECK(rf_outage(cfg, 1e-9) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(rf_outage(cfg, 500.0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(rf_outage(cfg, 0.0), ValidationError);

  // definitional identity with the output law's CDF
  const MRCConfig inid = MRCConfig::inid(1.0, {{1, 1.0}, {1, 2.0}});
  const auto law = mrc_output_law(inid);
  for (double t : {0.5, 2.0, 6.0})
    CHECK(rf_outage(inid, t) ==
          doctest::Approx(mixture_cdf(std::get<GGMixture>(law), t))
              .epsilon(1e-12));

  double prev = 0.0;
  for (double t = 0.1; t < 30.0; t *= 2.0) {
    const double p = rf_outage(cfg, t);
    CHECK(p >= prev - 1e-10);
    prev = p;
  }
}

TEST_CASE("normalized outage depends only on the threshold ratio") {
  const double ratio = 0.8;
  const double a = rf_outage(MRCConfig::iid(3, 2.0, 5.0, 2.0), ratio * 2.0);
  const double b = rf_outage(MRCConfig::iid(3, 2.0, 5.0, 17.0), ratio * 17.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
}

TEST_CASE("rf_curve rows") {
  const MRCConfig cfg = MRCConfig::iid(2, 2.0, 5.0, 1.0);
  const std::vector<double> one{12.5};
  const auto single =
      rf_curve(cfg, one, RFMetric::ber(Modulation::kBpsk));
  REQUIRE(single.points.size() == 1);
  CHECK(single.points[0].value ==
        doctest::Approx(
            rf_ber(MRCConfig::iid(2, 2.0, 5.0, db_to_linear(12.5)),
                   Modulation::kBpsk))
            .epsilon(1e-12));

  std::vector<double> sweep;
  for (double db = 0.0; db <= 20.0; db += 2.0) sweep.push_back(db);
  const auto ber = rf_curve(cfg, sweep, RFMetric::ber(Modulation::kBpsk));
  for (std::size_t i = 1; i < ber.points.size(); ++i)
    CHECK(ber.points[i].value < ber.points[i - 1].value);

  const auto out = rf_curve(cfg, sweep, RFMetric::outage());
  for (std::size_t i = 1; i < out.points.size(); ++i)
    CHECK(out.points[i].value >= out.points[i - 1].value);

  const std::vector<double> bad{3.0, 3.0};
  CHECK_THROWS_AS(rf_curve(cfg, bad, RFMetric::outage()), ValidationError);
  CHECK_THROWS_AS(rf_curve(cfg, {}, RFMetric::outage()), ValidationError);

  // non-integer common k is fine on the mixture path
  const MRCConfig k15 = MRCConfig::exponential_profile(1.5, {1, 2, 3}, 1.0, 0.5);
  const auto c = rf_curve(k15, one, RFMetric::ber(Modulation::kBpsk));
  CHECK(c.points[0].value > 0.0);
}
