#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dimscope/datasets.hpp"
#include "dimscope/error.hpp"
#include "oracles.hpp"

using namespace dimscope;

TEST_SUITE("datasets") {

TEST_CASE("random rotation is orthogonal") {
  Rng rng(1);
  const RowMatrix q = random_orthogonal(30, rng);
  const Eigen::MatrixXd err = q.transpose() * q - Eigen::MatrixXd::Identity(30, 30);
  CHECK(err.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("linear embedding is an isometry") {
  Rng rng(2);
  const auto x = sample_gaussian(4, 50, rng);
  const auto y = linear_embed(x, 11, rng);
  CHECK(y.ambient_dim() == 11);
  const auto a = pairwise_distances(x).values;
  const auto b = pairwise_distances(y).values;
  for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10 * a[k]);
  const auto z = linear_embed(x, 4, rng);
  for (std::size_t i = 0; i < x.n_samples(); ++i) {
    double nx = 0, nz = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      nx += x(i, j) * x(i, j);
      nz += z(i, j) * z(i, j);
    }
    CHECK(std::abs(nx - nz) < 1e-10 * nx);
  }
  CHECK_THROWS_AS(linear_embed(x, 3, rng), InvalidSpec);
}

TEST_CASE("hypercube, binary and gaussian laws before embedding") {
  Rng rng(3);
  const std::size_t n = 4000;
  const auto h = sample_hypercube(6, n, rng);
  for (std::size_t j = 0; j < 6; ++j) {
    double m = 0;
    for (std::size_t i = 0; i < n; ++i) m += h(i, j);
    m /= double(n);
    CHECK(std::abs(m - 0.5) <= 3.0 / std::sqrt(12.0 * n));
  }
  const auto b = sample_binary(9, 500, rng);
  for (double v : b.values()) CHECK((v == 0.0 || v == 1.0));
  const auto g = sample_gaussian(4, n, rng);
  const Eigen::MatrixXd c = g.matrix().transpose() * g.matrix() / double(n);
  CHECK((c - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("generators have the declared shape and are deterministic") {
  const std::vector<SyntheticSpec> specs{
      {"hypercube", 3, 7, 20, 1}, {"binary", 4, 6, 20, 2},  {"gaussian", 2, 5, 20, 3},
      {"sphere", 3, 0, 20, 4},    {"cmanifold", 3, 6, 20, 5}, {"swissroll", 2, 3, 20, 6}};
  for (const auto& s : specs) {
    const auto a = generate(s);
    const auto b = generate(s);
    INFO(s.family);
    CHECK(a == b);
    CHECK(a.n_samples() == 20);
    CHECK(a.ambient_dim() == (s.family == "sphere" ? 4u : s.ambient_dim));
    auto other = s;
    other.seed += 100;
    CHECK(!(generate(other) == a));
  }
  SyntheticSpec blobs{"blobs", 5, 0, 3, 9};
  CHECK(generate(blobs).ambient_dim() == 6561);
  SyntheticSpec u{"union", 2, 6, 10, 1};
  u.d_second = 3;
  u.n_second = 15;
  CHECK(generate(u).n_samples() == 25);
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(generate({"hypercube", 8, 4, 10, 1}), InvalidSpec);
  CHECK_THROWS_AS(generate({"cmanifold", 3, 7, 10, 1}), InvalidSpec);
  CHECK_THROWS_AS(generate({"swissroll", 3, 3, 10, 1}), InvalidSpec);
  CHECK_THROWS_AS(generate({"nonsense", 3, 3, 10, 1}), InvalidSpec);
  Rng rng(1);
  CHECK_THROWS_AS(gen_cmanifold(1, 10, rng), InvalidSpec);
  CHECK_THROWS_AS(gen_blobs(0, 10, rng), InvalidSpec);
}

TEST_CASE("sphere samples") {
  Rng rng(4);
  const auto s = gen_sphere(3, 5000, 2.5, rng);
  Eigen::RowVectorXd mean = s.matrix().colwise().mean();
  for (std::size_t i = 0; i < s.n_samples(); ++i) {
    CHECK(std::abs(s.matrix().row(Eigen::Index(i)).norm() - 2.5) < 1e-12);
  }
  CHECK(mean.norm() <= 5 * 2.5 / std::sqrt(5000.0));
}

TEST_CASE("curved manifold map") {
  const std::vector<double> zero{0, 0};
  CHECK(cmanifold_map(zero) == std::vector<double>{0, 0, 0, 0});
  const double pi = std::numbers::pi;
  const std::vector<double> x{pi / 2, pi};
  const auto y = cmanifold_map(x);
  const std::vector<double> expect{0, pi, -pi / 2, 0};
  for (int k = 0; k < 4; ++k) CHECK(y[k] == doctest::Approx(expect[k]).scale(1));
  const std::vector<double> x3{1, 2, 3};
  const auto y3 = cmanifold_map(x3);
  REQUIRE(y3.size() == 6);
  CHECK(y3[2] == doctest::Approx(3 * std::cos(2.0)));
  CHECK(y3[5] == doctest::Approx(1 * std::sin(3.0)));
}

TEST_CASE("swiss roll map") {
  auto a = swissroll_map(1, 0);
  CHECK(a[0] == doctest::Approx(1));
  CHECK(a[1] == doctest::Approx(0));
  CHECK(a[2] == doctest::Approx(0).scale(1));
  auto b = swissroll_map(1, 0.25);
  CHECK(b[0] == doctest::Approx(0).scale(1));
  CHECK(b[1] == doctest::Approx(0.25));
  CHECK(b[2] == doctest::Approx(1));
  Rng rng(5);
  const auto sr = gen_swissroll(500, rng);
  for (std::size_t i = 0; i < 500; ++i) {
    CHECK(sr(i, 0) * sr(i, 0) + sr(i, 2) * sr(i, 2) <= 1.0 + 1e-12);
  }
}

TEST_CASE("blob pixels") {
  BlobParams p{0, 0, 2, 7, 0};
  CHECK(blob_pixel(p, 0, 0) == 1.0);
  const double edge = p.s * std::sqrt(1 + p.e * p.e);
  CHECK(std::abs(blob_pixel(p, 0, edge)) < 1e-12);
  CHECK(std::abs(blob_pixel(p, 0, -edge)) < 1e-12);
  const auto img = render_blob(p);
  REQUIRE(img.size() == 81u * 81u);
  CHECK(img[40 * 81 + 40] == 1.0);
  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const auto q = draw_blob_params(rng);
    CHECK(std::abs(q.dx) < 20);
    CHECK(std::abs(q.dy) < 20);
    CHECK(q.s > 1);
    CHECK(q.s < 3);
    CHECK(q.e > 5);
    CHECK(q.e < 10);
    CHECK(std::abs(q.theta) < std::numbers::pi / 2);
  }
  const auto one = gen_blobs(1, 20, rng);
  for (double v : one.values()) CHECK((v == 0.0 || (v >= 0.01 && v <= 1.0)));
  const auto three = gen_blobs(3, 20, rng);
  for (double v : three.values()) CHECK((v == 0.0 || (v >= 0.01 && v <= 3.0)));
}

TEST_CASE("noise") {
  Rng rng(7);
  const auto x = gen_hypercube(3, 20, 400, rng);
  CHECK(add_gaussian_noise(x, 0.0, rng) == x);
  const double sigma = 0.3;
  const auto y = add_gaussian_noise(x, sigma, rng);
  double s = 0, s2 = 0;
  const double m = double(x.values().size());
  for (std::size_t k = 0; k < x.values().size(); ++k) {
    const double t = y.values()[k] - x.values()[k];
    s += t;
    s2 += t * t;
  }
  const double sd = std::sqrt(s2 / m - (s / m) * (s / m));
  CHECK(std::abs(sd - sigma) <= 5 * sigma / std::sqrt(m));
  CHECK_THROWS_AS(add_gaussian_noise(x, -1.0, rng), InvalidSpec);
}

TEST_CASE("union") {
  const auto a = DataSet::from_rows({{1, 2}, {3, 4}});
  const auto b = DataSet::from_rows({{5, 6}});
  const auto u = union_rows(a, b);
  CHECK(u.n_samples() == 3);
  CHECK(u(2, 1) == 6);
  CHECK(union_rows(a, DataSet()) == a);
  CHECK_THROWS_AS(union_rows(a, DataSet::from_rows({{1, 2, 3}})), InvalidInput);
  Rng rng(8);
  const auto cubes = gen_cube_union(2, 3, 5, 30, 40, rng);
  CHECK(cubes.n_samples() == 70);
  CHECK(cubes.ambient_dim() == 5);
}

}
