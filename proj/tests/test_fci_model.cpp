#include <doctest.h>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "dimscope/correlation_integral.hpp"
#include "dimscope/datasets.hpp"
#include "dimscope/error.hpp"
#include "dimscope/fci_model.hpp"
#include "dimscope/special.hpp"
#include "oracles.hpp"

using namespace dimscope;

TEST_SUITE("fci_model") {

TEST_CASE("solid angle ratio") {
  CHECK(solid_angle_ratio(1) == doctest::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
  CHECK(solid_angle_ratio(2) == doctest::Approx(0.5).epsilon(1e-12));
  const double big = solid_angle_ratio(300);
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(oracle::solid_angle_ratio(300)).epsilon(1e-12));
  CHECK_THROWS_AS(solid_angle_ratio(0), DomainError);
  CHECK_THROWS_AS(solid_angle_ratio(-1), DomainError);
}

TEST_CASE("fixed points of the cdf") {
  for (int d = 1; d <= 50; ++d) {
    CHECK(std::abs(fci_cdf(std::sqrt(2.0), d) - 0.5) < 1e-10);
    CHECK(fci_cdf(0.0, d) == 0.0);
    CHECK(fci_cdf(2.0, d) == 1.0);
    CHECK(fci_cdf(2.5, d) == 1.0);
  }
  CHECK(fci_cdf(1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(fci_cdf(1.0, 2.0) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(fci_cdf(-0.1, 3), DomainError);
  CHECK_THROWS_AS(fci_cdf(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(fci_cdf(std::numeric_limits<double>::quiet_NaN(), 3), DomainError);
  CHECK_THROWS_AS(fci_model_value(1.0, {3.0, 0.0}), DomainError);
}

TEST_CASE("quadrature oracle self checks") {
  CHECK(std::abs(oracle::fci_quadrature(2.0, 7) - 1.0) < 1e-10);
  CHECK(std::abs(oracle::fci_quadrature(std::sqrt(2.0), 13) - 0.5) < 1e-10);
  CHECK(std::abs(oracle::fci_quadrature(0.8, 4) - fci_cdf(0.8, 4)) < 1e-8);
}

TEST_CASE("agreement with the quadrature oracle") {
  for (double d : {0.5, 1.0, 2.0, 3.0, 6.0, 7.5, 20.0, 100.0}) {
    double worst = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double rbar = 2.0 * k / 51.0;
      worst = std::max(worst, std::abs(fci_cdf(rbar, d) - oracle::fci_quadrature(rbar, d)));
    }
    INFO("d = " << d);
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("agreement with the terminating polynomial for even d") {
  for (int d = 2; d <= 10; d += 2) {
    for (int k = 0; k <= 40; ++k) {
      const double rbar = 2.0 * k / 40.0;
      INFO("d = " << d << ", rbar = " << rbar);
      CHECK(std::abs(fci_cdf(rbar, d) - oracle::fci_even_polynomial(rbar, d)) < 1e-10);
    }
  }
}

TEST_CASE("incomplete beta against an independent implementation") {
  for (double a : {0.05, 0.5, 1.0, 3.7, 50.0, 500.0}) {
    for (double b : {0.5, 2.0, 10.0}) {
      for (double x : {0.0, 1e-6, 0.1, 0.5, 0.9, 0.999, 1.0}) {
        INFO(a << ' ' << b << ' ' << x);
        CHECK(std::abs(incomplete_beta(x, a, b) - boost::math::ibeta(a, b, x)) < 1e-12);
      }
    }
  }
  CHECK(log_beta(2, 3) == doctest::Approx(std::log(1.0 / 12.0)).epsilon(1e-13));
}

TEST_CASE("cdf is a distribution function for a wide range of d") {
  for (double d : {0.5, 1.0, 2.0, 3.0, 7.5, 20.0, 100.0, 1000.0}) {
    double prev = 0.0;
    CHECK(fci_cdf(0.0, d) == 0.0);
    for (int k = 1; k <= 400; ++k) {
      const double v = fci_cdf(2.0 * k / 400.0, d);
      CHECK(v >= prev);
      CHECK(v <= 1.0);
      prev = v;
    }
    CHECK(prev == 1.0);
  }
}

TEST_CASE("central slope grows with d") {
  double prev = 0.0;
  for (double d = 2; d <= 256; d *= 2) {
    const double slope = fci_density(std::sqrt(2.0), d);
    CHECK(slope > prev);
    prev = slope;
  }
}

TEST_CASE("density is the derivative of the cdf") {
  for (double d : {0.7, 3.0, 12.0}) {
    for (double rbar : {0.3, 1.0, 1.4, 1.7}) {
      const double h = 1e-6;
      const double fd = (fci_cdf(rbar + h, d) - fci_cdf(rbar - h, d)) / (2 * h);
      CHECK(fci_density(rbar, d) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  CHECK(fci_density(2.5, 4) == 0.0);
}

TEST_CASE("model value scaling and clamp") {
  for (double d : {1.0, 5.0, 40.0}) {
    CHECK(fci_model_value(std::sqrt(2.0) * 3.0, {d, 3.0}) == doctest::Approx(0.5));
  }
  CHECK(fci_model_value(3.0, {4.0, 1.0}) == 1.0);
  CHECK(fci_model_value(1.0, {2.0, 1.0}) == doctest::Approx(0.25));
  FciShape shape(6.0);
  CHECK(shape.cdf(0.9) == fci_cdf(0.9, 6.0));
}

TEST_CASE("parameter gradient against a coarse difference") {
  const FciParams p{8.0, 1.3};
  const double r = 1.7;
  const auto g = fci_param_gradient(r, p);
  const double h = 1e-3;
  const double dd = (fci_model_value(r, {p.d + h, p.r_s}) - fci_model_value(r, {p.d - h, p.r_s})) / (2 * h);
  const double dr = (fci_model_value(r, {p.d, p.r_s + h}) - fci_model_value(r, {p.d, p.r_s - h})) / (2 * h);
  CHECK(g.wrt_d == doctest::Approx(dd).epsilon(1e-4));
  CHECK(g.wrt_r_s == doctest::Approx(dr).epsilon(1e-4));
  CHECK(g.wrt_r_s == doctest::Approx(-fci_density(r / p.r_s, p.d) * r / (p.r_s * p.r_s)).epsilon(1e-6));
}

TEST_CASE("sampled spheres follow the model") {
  for (std::size_t d : {2u, 10u}) {
    Rng rng(100 + d);
    const auto s = gen_sphere(d, 2000, 1.0, rng);
    const auto dist = pairwise_distances(s);
    const double sup = oracle::sup_norm(dist.values, [d](double r) { return fci_cdf(r, double(d)); });
    INFO("d = " << d);
    CHECK(sup < 0.05);
  }
}

}
