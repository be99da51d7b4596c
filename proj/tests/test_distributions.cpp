#include "ggsum/distributions.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "ggsum/errors.hpp"
#include "ggsum/specfun.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ggsum;

namespace {

// density of the single-shape special case (squared K-distribution)
double k_dist_pdf(double k, double omega, double x) {
  const double c = 0.5 * (k + 1.0);
  return 2.0 * std::pow(k, c) * std::pow(x, c - 1.0) /
         (specfun::gamma_fn(k) * std::pow(omega, c)) *
         specfun::bessel_k(k - 1.0, 2.0 * std::sqrt(k * x / omega));
}

}  // namespace

TEST_CASE("gamma_pdf basics") {
  for (double x : {0.1, 1.0, 3.7})
    CHECK(gamma_pdf({1.0, 1.0}, x) ==
          doctest::Approx(std::exp(-x)).epsilon(1e-14));
  CHECK(gamma_pdf({2.0, 1.0}, 0.0) == 0.0);
  CHECK(gamma_pdf({2.0, 3.0}, 3.0) ==
        doctest::Approx(std::exp(-1.0) / 3.0).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_pdf({2.0, 1.0}, -0.1), DomainError);
  CHECK_THROWS_AS(gamma_pdf({0.5, 1.0}, 0.0), DomainError);
  // normalization by brute-force quadrature
  const double mass =
      oracle::simpson([](double x) { return gamma_pdf({2.0, 3.0}, x); }, 0.0,
                      120.0, 200000);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gg_pdf special cases") {
  // double-Rayleigh power law at k = m = 1
  CHECK(gg_pdf({1.0, 1.0, 1.0}, 1.0) ==
        doctest::Approx(2.0 * oracle::bessel_k(0.0, 2.0)).epsilon(1e-11));
  CHECK(gg_pdf({1.0, 1.0, 1.0}, 1.0) ==
        doctest::Approx(0.22778774549906688).epsilon(1e-12));
  // m = 1 reduction to the squared K-distribution, pointwise
  for (double x : {0.05, 0.3, 1.0, 2.5, 8.0}) {
    CHECK(gg_pdf({2.0, 1.0, 1.5}, x) ==
          doctest::Approx(k_dist_pdf(2.0, 1.5, x)).epsilon(1e-10));
    CHECK(gg_pdf({1.0, 2.0, 1.5}, x) ==
          doctest::Approx(k_dist_pdf(2.0, 1.5, x)).epsilon(1e-10));  // symmetry
    const double omega = 0.8;
    CHECK(gg_pdf({1.0, 1.0, omega}, x) ==
          doctest::Approx(2.0 / omega *
                          oracle::bessel_k(0.0, 2.0 * std::sqrt(x / omega)))
              .epsilon(1e-10));
  }
}

TEST_CASE("gg_pdf value at the origin follows the analytic limit") {
  CHECK(gg_pdf({2.0, 5.0, 1.0}, 0.0) == 0.0);
  CHECK(gg_pdf({1.0, 4.0, 2.0}, 0.0) ==
        doctest::Approx(4.0 / (3.0 * 2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(gg_pdf({0.5, 5.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(gg_pdf({1.0, 1.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(gg_pdf({2.0, 5.0, 1.0}, -1.0), DomainError);
}

TEST_CASE("gg_pdf scaling law") {
  const GGParams p{2.0, 5.0, 1.3};
  for (double c : {0.1, 2.0, 50.0})
    for (double x : {0.2, 1.0, 4.0}) {
      const GGParams ps{p.k, p.m, c * p.omega};
      CHECK(gg_pdf(ps, c * x) * c ==
            doctest::Approx(gg_pdf(p, x)).epsilon(1e-12));
    }
}

TEST_CASE("gg_moment closed form") {
  const GGParams p{2.0, 5.0, 3.0};
  CHECK(gg_moment(p, 0.0) == 1.0);
  CHECK(gg_moment(p, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(gg_moment(p, 2.0) == doctest::Approx(16.2).epsilon(1e-13));
  // non-integer order goes through the same log-space route
  CHECK(gg_moment({1.0, 1.0, 1.0}, 0.5) ==
        doctest::Approx(std::pow(specfun::gamma_fn(1.5), 2)).epsilon(1e-12));
}

TEST_CASE("gg_cdf endpoints and frozen value") {
  const GGParams p{1.0, 1.0, 1.0};
  CHECK(gg_cdf(p, 0.0) == 0.0);
  // antiderivative of the k = m = 1 case gives 1 - 2 K_1(2) at x = 1
  const double expected = 1.0 - 2.0 * oracle::bessel_k(1.0, 2.0);
  CHECK(gg_cdf(p, 1.0) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(gg_cdf({2.0, 5.0, 1.0}, 50.0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(gg_cdf(p, -1.0), DomainError);
}

TEST_CASE("gg_cdf is monotone") {
  const GGParams p{0.8, 3.0, 2.0};
  double prev = 0.0;
  for (double x = 0.05; x < 30.0; x *= 1.6) {
    const double f = gg_cdf(p, x);
    CHECK(f >= prev - 1e-10);
    CHECK(f <= 1.0);
    prev = f;
  }
}

TEST_CASE("expect_under_gg normalization and moments on the parameter grid") {
  const std::vector<double> shapes{0.5, 1.0, 2.0, 5.0, 20.0};
  const std::vector<double> omegas{0.1, 1.0, 10.0};
  for (double k : shapes)
    for (double m : shapes)
      for (double omega : omegas) {
        const GGParams p{k, m, omega};
        CHECK(expect_under_gg([](double) { return 1.0; }, p) ==
              doctest::Approx(1.0).epsilon(1e-8));
        for (int n = 1; n <= 4; ++n) {
          const double mom =
              expect_under_gg([n](double x) { return std::pow(x, n); }, p);
          CHECK(mom == doctest::Approx(gg_moment(p, n)).epsilon(1e-6));
        }
      }
}

TEST_CASE("gamma_sample determinism and law") {
  Philox4x32 r1(42, 0), r2(42, 0);
  CHECK(gamma_sample({3.0, 2.0}, r1) == gamma_sample({3.0, 2.0}, r2));

  auto run_mean = [](GammaParams p, int n, std::uint64_t seed) {
    Philox4x32 rng(seed, 1);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = gamma_sample(p, rng);
      s += v;
      s2 += v * v;
    }
    const double mean = s / n;
    const double sd = std::sqrt((s2 / n - mean * mean) / n);
    return std::pair{mean, sd};
  };
  {
    auto [mean, se] = run_mean({3.0, 2.0}, 1000000, 7);
    CHECK(std::abs(mean - 6.0) <= 3.0 * se);
  }
  {
    // shape < 1 exercises the boosted path
    auto [mean, se] = run_mean({0.4, 1.0}, 1000000, 7);
    CHECK(std::abs(mean - 0.4) <= 3.0 * se);
  }
}

TEST_CASE("gg_sample determinism, mean, and KS agreement with gg_cdf") {
  const GGParams p{2.0, 5.0, 1.0};
  Philox4x32 r1(11, 3), r2(11, 3);
  CHECK(gg_sample(p, r1) == gg_sample(p, r2));

  const int n = 1000000;
  Philox4x32 rng(2024, 0);
  std::vector<double> samples(n);
  double s = 0.0, s2 = 0.0;
  for (auto& v : samples) {
    v = gg_sample(p, rng);
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double se = std::sqrt((s2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0) <= 3.0 * se);

  const auto table =
      test_util::make_cdf_table([&](double x) { return gg_pdf(p, x); }, 40.0);
  const double d = test_util::ks_statistic(std::move(samples), table);
  CHECK(d <= 1.628 / std::sqrt(double(n)));  // 1% critical value
}
