#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "dimscope/correlation_integral.hpp"
#include "dimscope/datasets.hpp"
#include "dimscope/error.hpp"
#include "oracles.hpp"

using namespace dimscope;

TEST_SUITE("corr_integral") {

TEST_CASE("single pair") {
  const auto c = empirical_correlation_integral({{1.0}});
  REQUIRE(c.size() == 1);
  CHECK(c.r[0] == 1.0);
  CHECK(c.rho[0] == 0.0);
  CHECK(c.evaluate(0.5) == 0.0);
  CHECK(c.evaluate(1.5) == 1.0);
  CHECK(c.total_pairs == 1);
}

TEST_CASE("step evaluation counts pairs at or below r") {
  const auto c = empirical_correlation_integral({{1, 1, 2}});
  CHECK(c.evaluate(1.5) == doctest::Approx(2.0 / 3.0));
  CHECK(c.evaluate(1.0) == doctest::Approx(2.0 / 3.0));
  CHECK(c.evaluate(0.99) == 0.0);
  CHECK(c.evaluate(2.0) == 1.0);
  CHECK(c.rho == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0});
}

TEST_CASE("empty distance list is rejected") {
  CHECK_THROWS_AS(empirical_correlation_integral({}), InvalidInput);
}

TEST_CASE("unit circle matches the one-dimensional closed form") {
  Rng rng(17);
  const auto circle = gen_sphere(1, 2000, 1.0, rng);
  const auto d = pairwise_distances(circle);
  const double sup = oracle::sup_norm(d.values, [](double r) {
    return std::acos(std::clamp(1.0 - 0.5 * r * r, -1.0, 1.0)) / std::numbers::pi;
  });
  CHECK(sup < 0.05);
}

TEST_CASE("subsampling") {
  std::vector<double> ten(10);
  for (int i = 0; i < 10; ++i) ten[i] = i + 1;
  const auto small = empirical_correlation_integral({ten});
  Rng rng(1);
  const auto same = subsample_curve(small, 1000, rng);
  CHECK(same.r == small.r);
  CHECK(same.rho == small.rho);

  std::vector<double> many(4950);
  for (std::size_t i = 0; i < many.size(); ++i) many[i] = std::sqrt(double(i));
  const auto big = empirical_correlation_integral({many});
  Rng r1(5), r2(5);
  const auto a = subsample_curve(big, 1000, r1);
  const auto b = subsample_curve(big, 1000, r2);
  CHECK(a.size() == 1000);
  CHECK(a.r == b.r);
  CHECK(std::is_sorted(a.r.begin(), a.r.end()));
  CHECK(std::is_sorted(a.rho.begin(), a.rho.end()));
  std::set<double> members(big.r.begin(), big.r.end());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(members.count(a.r[k]) == 1);
    CHECK(a.rho[k] == big.rho[static_cast<std::size_t>(a.r[k] * a.r[k] + 0.5)]);
  }
  CHECK_THROWS_AS(subsample_curve(big, 1, r1), InvalidInput);
}

TEST_CASE("curve invariants and export") {
  Rng rng(2);
  const auto ds = gen_gaussian(3, 5, 80, rng);
  const auto c = empirical_correlation_integral(pairwise_distances(ds));
  CHECK(std::is_sorted(c.r.begin(), c.r.end()));
  CHECK(std::is_sorted(c.rho.begin(), c.rho.end()));
  CHECK(c.rho.front() == 0.0);
  CHECK(c.rho.back() == doctest::Approx(1.0 - 1.0 / double(c.size())));
  CHECK(c.evaluate(c.r.back()) == 1.0);
  std::ostringstream out;
  write_curve_csv(out, c);
  const std::string text = out.str();
  CHECK(text.rfind("r,rho\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == long(c.size()) + 1);
}

TEST_CASE("small-r slope tracks the dimension of a flat sample") {
  for (std::size_t d : {1u, 2u, 3u}) {
    Rng rng(d);
    const auto ds = gen_hypercube(d, d + 2, 2000, rng);
    const auto c = empirical_correlation_integral(pairwise_distances(ds));
    const std::size_t i1 = c.size() / 1000, i2 = c.size() / 50;
    const double slope = (std::log(c.rho[i2]) - std::log(c.rho[i1])) /
                         (std::log(c.r[i2]) - std::log(c.r[i1]));
    CHECK(slope == doctest::Approx(double(d)).epsilon(0.15));
  }
}

}
