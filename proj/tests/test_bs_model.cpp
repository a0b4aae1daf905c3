#include <boost/random/gamma_distribution.hpp>
#include <boost/random/mersenne_twister.hpp>
#include <cmath>
#include <cstring>
#include <vector>

#include "bssize/bs_model.hpp"
#include "bssize/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bssize;

TEST_CASE("BS parameters are validated at construction") {
  CHECK_THROWS_AS(BSParams(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(BSParams(1.0, -2.0), ValidationError);
  CHECK_THROWS_AS(BSParams(NAN, 1.0), ValidationError);
  CHECK_THROWS_AS(InvGammaParams(-1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(InvGammaParams(1.0, 0.0), ValidationError);
  CHECK_NOTHROW(BSParams(0.1, 100.0));
}

TEST_CASE("bs_log_pdf at x = beta reduces to 1/(alpha beta sqrt(2 pi))") {
  CHECK(bs_log_pdf(1.0, BSParams(1.0, 1.0)) == doctest::Approx(-0.9189385).epsilon(1e-7));
  CHECK(bs_log_pdf(2.0, BSParams(0.5, 2.0)) == doctest::Approx(-0.9189385).epsilon(1e-7));
  CHECK_THROWS_AS(bs_log_pdf(0.0, BSParams(1.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(bs_log_pdf(-1.0, BSParams(1.0, 1.0)), std::domain_error);
}

TEST_CASE("bs density integrates to one and beta is the median") {
  for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
    for (double beta : {1.0, 2.0, 5.0}) {
      CAPTURE(alpha);
      CAPTURE(beta);
      const BSParams p(alpha, beta);
      auto pdf = [&](double x) { return x > 0.0 ? std::exp(bs_log_pdf(x, p)) : 0.0; };
      CHECK(std::abs(oracle::integrate_0_inf(pdf) - 1.0) < 1e-8);
      boost::math::quadrature::tanh_sinh<double> ts;
      const double below = ts.integrate(pdf, 0.0, beta);
      CHECK(std::abs(below - 0.5) < 1e-8);
    }
  }
}

TEST_CASE("bs_log_pdf stays finite in the tails") {
  const BSParams p(0.3, 2.0);
  for (double x : {1e-8, 1e-3, 1e3, 1e8}) {
    CHECK(std::isfinite(bs_log_pdf(x, p)));
  }
}

TEST_CASE("stochastic representation") {
  CHECK(bs_from_normal(BSParams(0.7, 3.0), 0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(bs_from_normal(BSParams(2.0, 3.0), 0.0) == doctest::Approx(3.0).epsilon(1e-15));
  const BSParams unit(1.0, 1.0);
  CHECK(bs_from_normal(unit, 0.0) == doctest::Approx(1.0));
  CHECK(bs_from_normal(unit, 0.0) < bs_from_normal(unit, 1.0));
  // Monotone and positive, including deep in the lower tail.
  double prev = 0.0;
  for (double z = -40.0; z <= 40.0; z += 0.5) {
    const double x = bs_from_normal(BSParams(2.0, 1.5), z);
    CHECK(x > prev);
    prev = x;
  }
}

TEST_CASE("bs moments") {
  CHECK(bs_mean(BSParams(1.0, 2.0)) == doctest::Approx(3.0));
  CHECK(bs_mean(BSParams(0.1, 2.0)) == doctest::Approx(2.01));
  CHECK(bs_mean(BSParams(2.0, 1.0)) == doctest::Approx(3.0));
  CHECK(bs_variance(BSParams(1.0, 2.0)) == doctest::Approx(9.0));
  CHECK(bs_variance(BSParams(1.0, 1.0)) == doctest::Approx(2.25));
}

TEST_CASE("bs_sample matches mean and variance within 3 standard errors") {
  constexpr int kDraws = 1'000'000;
  std::uint64_t seed = 11;
  for (double alpha : {0.25, 0.5, 1.0, 2.0}) {
    for (double beta : {1.0, 2.0, 5.0}) {
      CAPTURE(alpha);
      CAPTURE(beta);
      const BSParams p(alpha, beta);
      Rng rng(seed++);
      std::vector<double> xs(kDraws);
      for (double& x : xs) x = bs_sample(p, rng);
      const auto m = oracle::moments(xs);
      CHECK(std::abs(m.mean - bs_mean(p)) < 3.0 * m.se_mean);
      CHECK(std::abs(m.variance - bs_variance(p)) < 3.0 * m.se_variance);
    }
  }
}

TEST_CASE("bs_sample with alpha=0.5 beta=2 centers on 2.25") {
  const BSParams p(0.5, 2.0);
  Rng rng(2024);
  std::vector<double> xs(1'000'000);
  for (double& x : xs) x = bs_sample(p, rng);
  const auto m = oracle::moments(xs);
  CHECK(std::abs(m.mean - 2.25) < 3.0 * m.se_mean);
  CHECK(std::abs(m.variance - bs_variance(p)) < 3.0 * m.se_variance);
}

TEST_CASE("seeded sampling is bit-for-bit reproducible") {
  const BSParams p(1.3, 4.0);
  Rng a(99);
  Rng b(99);
  for (int i = 0; i < 1000; ++i) {
    const double x = bs_sample(p, a);
    const double y = bs_sample(p, b);
    REQUIRE(std::memcmp(&x, &y, sizeof x) == 0);
  }
}

TEST_CASE("inverse gamma log density") {
  CHECK(invgamma_log_pdf(1.0, InvGammaParams(1.0, 1.0)) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(invgamma_log_pdf(0.0, InvGammaParams(1.0, 1.0)), std::domain_error);

  const InvGammaParams p(8.0, 50.0);
  auto pdf = [&](double x) { return x > 0.0 ? std::exp(invgamma_log_pdf(x, p)) : 0.0; };
  CHECK(std::abs(oracle::integrate_0_inf(pdf) - 1.0) < 1e-8);

  const double mode = 50.0 / 9.0;
  const double at_mode = invgamma_log_pdf(mode, p);
  for (double h : {1e-3, 1e-2, 0.1, 1.0}) {
    CHECK(invgamma_log_pdf(mode - h, p) < at_mode);
    CHECK(invgamma_log_pdf(mode + h, p) < at_mode);
  }
}

TEST_CASE("inverse gamma sampling") {
  const InvGammaParams p(10.0, 50.0);
  Rng rng(7);
  std::vector<double> xs(1'000'000);
  for (double& x : xs) x = invgamma_sample(p, rng);
  const auto m = oracle::moments(xs);
  CHECK(std::abs(m.mean - 50.0 / 9.0) < 3.0 * m.se_mean);

  SUBCASE("kernel density mode near b/(a+1)") {
    std::vector<double> sub(xs.begin(), xs.begin() + 100'000);
    const double h = 1.06 * std::sqrt(m.variance) * std::pow(sub.size(), -0.2);
    double best_x = 0.0;
    double best = -1.0;
    for (double x = 3.5; x <= 6.0; x += 0.01) {
      double dens = 0.0;
      for (double s : sub) {
        const double z = (x - s) / h;
        dens += std::exp(-0.5 * z * z);
      }
      if (dens > best) {
        best = dens;
        best_x = x;
      }
    }
    CHECK(std::abs(best_x - 50.0 / 11.0) < 0.2);
  }

  SUBCASE("support is positive for small and large shapes") {
    Rng r2(8);
    for (double a : {0.05, 0.5, 1.0, 3.0, 250.0}) {
      for (double b : {1e-3, 1.0, 1e3}) {
        const InvGammaParams q(a, b);
        for (int i = 0; i < 2000; ++i) REQUIRE(invgamma_sample(q, r2) > 0.0);
      }
    }
  }
}

TEST_CASE("inverse gamma sampler agrees with an independent reciprocal-gamma oracle") {
  constexpr int kDraws = 100'000;
  boost::random::mt19937_64 engine(12345);
  for (double a : {0.5, 2.0, 10.0}) {
    CAPTURE(a);
    const double b = 50.0;
    boost::random::gamma_distribution<double> gamma(a, 1.0 / b);
    std::vector<double> ours(kDraws);
    std::vector<double> reference(kDraws);
    Rng rng(31 + static_cast<std::uint64_t>(a * 10));
    for (int i = 0; i < kDraws; ++i) {
      ours[i] = invgamma_sample(InvGammaParams(a, b), rng);
      reference[i] = 1.0 / gamma(engine);
    }
    CHECK(oracle::ks_two_sample(ours, reference) < oracle::ks_critical_1pct(kDraws, kDraws));
  }
}

TEST_CASE("normal generator has unit variance and light tails") {
  Rng rng(5);
  std::vector<double> zs(1'000'000);
  for (double& z : zs) z = rng.normal();
  const auto m = oracle::moments(zs);
  CHECK(std::abs(m.mean) < 3.0 * m.se_mean);
  CHECK(std::abs(m.variance - 1.0) < 3.0 * m.se_variance);
  auto phi = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  std::vector<double> sub(zs.begin(), zs.begin() + 100'000);
  CHECK(oracle::ks_one_sample(sub, phi) < 1.628 / std::sqrt(100'000.0));
}
