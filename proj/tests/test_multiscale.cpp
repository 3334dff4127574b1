#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "dimscope/datasets.hpp"
#include "dimscope/error.hpp"
#include "dimscope/fci_estimator.hpp"
#include "dimscope/multiscale.hpp"

using namespace dimscope;

TEST_SUITE("multiscale") {

TEST_CASE("neighborhood examples") {
  const auto line = DataSet::from_rows({{0}, {1}, {2}});
  CHECK(neighborhood_indices(line, 0, Scale::radius(1.5)) == std::vector<std::size_t>{0, 1});
  CHECK(neighborhood(line, 0, Scale::radius(1.5)) == DataSet::from_rows({{0}, {1}}));
  CHECK(neighborhood_indices(line, 0, Scale::radius(1.0)) == std::vector<std::size_t>{0});
  CHECK(neighborhood(line, 1, Scale::radius(100)).n_samples() == 3);
  CHECK(neighborhood(line, 2, Scale::knn(2)).n_samples() == 3);
  const auto tie = DataSet::from_rows({{0}, {1}, {-1}, {2}});
  CHECK(neighborhood_indices(tie, 0, Scale::knn(1)) == std::vector<std::size_t>{0, 1});
  CHECK(neighborhood_indices(tie, 0, Scale::knn(2)) == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("neighborhoods are nested") {
  Rng rng(1);
  const auto ds = gen_hypercube(3, 5, 300, rng);
  for (std::size_t c : {0u, 17u, 299u}) {
    std::vector<std::size_t> prev;
    for (double r : {0.1, 0.3, 0.6, 1.0, 3.0}) {
      auto cur = neighborhood_indices(ds, c, Scale::radius(r));
      CHECK(cur.front() == c);
      std::set<std::size_t> s(cur.begin(), cur.end());
      for (auto i : prev) CHECK(s.count(i) == 1);
      prev = cur;
    }
    prev.clear();
    for (std::size_t n : {5u, 20u, 100u, 299u}) {
      auto cur = neighborhood_indices(ds, c, Scale::knn(n));
      CHECK(cur.size() == n + 1);
      std::set<std::size_t> s(cur.begin(), cur.end());
      for (auto i : prev) CHECK(s.count(i) == 1);
      prev = cur;
    }
  }
}

TEST_CASE("local estimate edge cases") {
  Rng rng(2);
  const auto ds = gen_hypercube(2, 3, 100, rng);
  const auto tiny = local_id(ds, 0, Scale::knn(2));
  CHECK_FALSE(tiny.d_est.has_value());
  CHECK(tiny.n_neighbors == 2);
  CHECK_FALSE(tiny.reliable);
  const auto few = local_id(ds, 0, Scale::knn(10));
  CHECK(few.d_est.has_value());
  CHECK_FALSE(few.reliable);
  const auto ok = local_id(ds, 0, Scale::knn(40));
  CHECK(ok.reliable);
}

TEST_CASE("largest scale equals the global estimate") {
  Rng rng(3);
  const auto ds = gen_hypercube(4, 8, 200, rng);
  const auto whole = local_id(ds, 5, Scale::knn(199));
  REQUIRE(whole.d_est);
  CHECK(*whole.d_est == doctest::Approx(estimate_id_global(ds).d_est).epsilon(1e-9));
}

TEST_CASE("fast geometry agrees with the plain path") {
  Rng rng(4);
  const auto ds = gen_hypercube(5, 9, 400, rng);
  const NeighborhoodGeometry geo(ds);
  const MultiscaleConfig cfg;
  for (std::size_t n : {20u, 80u, 399u}) {
    const auto idx = neighborhood_indices(ds, 7, Scale::knn(n));
    const auto plain = pairwise_distances(center_and_project(ds.select(idx)));
    const auto fast = geo.projected_distances(idx);
    REQUIRE(fast.size() == plain.size());
    double worst = 0;
    for (std::size_t k = 0; k < fast.size(); ++k) worst = std::max(worst, std::abs(fast.values[k] - plain.values[k]));
    CHECK(worst < 1e-9);
    const auto a = geo.local_id(idx, cfg);
    const auto b = local_id(ds, 7, Scale::knn(n), cfg);
    REQUIRE(a.d_est);
    CHECK(*a.d_est == doctest::Approx(*b.d_est).epsilon(1e-6));
  }
}

TEST_CASE("scale grid helpers") {
  const auto g = default_knn_scales(2000);
  std::vector<std::size_t> counts;
  for (const auto& s : g) counts.push_back(s.count());
  CHECK(counts.front() == 20);
  CHECK(counts[1] == 28);
  CHECK(counts[2] == 40);
  CHECK(counts.back() == 1999);
  CHECK(std::is_sorted(counts.begin(), counts.end()));
  CHECK(std::adjacent_find(counts.begin(), counts.end()) == counts.end());
  Rng rng(5);
  const auto ds = gen_hypercube(2, 2, 100, rng);
  const auto r = auto_radius_scales(ds, 3);
  CHECK(r.size() == 20);
  CHECK(neighborhood(ds, 3, r.back()).n_samples() == 100);
}

TEST_CASE("profile ordering and validation") {
  Rng rng(6);
  const auto ds = gen_hypercube(3, 6, 300, rng);
  const auto p = scale_profile(ds, 11, default_knn_scales(300));
  CHECK(p.center_index == 11);
  for (std::size_t k = 1; k < p.entries.size(); ++k) {
    CHECK(p.entries[k].n_neighbors >= p.entries[k - 1].n_neighbors);
  }
  CHECK_THROWS_AS(scale_profile(ds, 1, {Scale::knn(40), Scale::knn(20)}), InvalidInput);
  CHECK_THROWS_AS(scale_profile(ds, 1, {Scale::knn(20), Scale::radius(2)}), InvalidInput);
  std::ostringstream out;
  write_profiles_csv(out, {p});
  CHECK(out.str().rfind("center,scale_kind,scale,n_neighbors,d_est,reliable\n", 0) == 0);
}

TEST_CASE("flat profile on a linear hypercube") {
  Rng rng(7);
  const auto ds = gen_hypercube(10, 30, 2000, rng);
  const NeighborhoodGeometry geo(ds);
  for (std::size_t c : {0u, 1234u}) {
    const auto p = geo.scale_profile(c, default_knn_scales(2000), {});
    for (const auto& e : p.entries) {
      if (!e.reliable) continue;
      INFO("center " << c << " n " << e.n_neighbors);
      CHECK(std::abs(*e.d_est - 10.0) <= 1.5);
    }
  }
}

TEST_CASE("swiss roll: flat outer region versus curled inner region") {
  Rng rng(8);
  const auto sr = gen_swissroll(2000, rng);
  std::size_t outer = 0, inner = 0;
  double rmax = -1, rmin = 1e9;
  for (std::size_t i = 0; i < sr.n_samples(); ++i) {
    const double y = sr(i, 1);
    if (y < 0.3 || y > 0.7) continue;
    const double rad = std::hypot(sr(i, 0), sr(i, 2));
    if (rad > rmax) rmax = rad, outer = i;
    if (rad < rmin) rmin = rad, inner = i;
  }
  const auto o = local_id(sr, outer, Scale::knn(160));
  const auto in = local_id(sr, inner, Scale::knn(160));
  REQUIRE(o.d_est);
  REQUIRE(in.d_est);
  CHECK(*o.d_est == doctest::Approx(2.0).epsilon(0.15));
  CHECK(*in.d_est > *o.d_est);
}

TEST_CASE("multiscale summary is the smallest per-center minimum") {
  Rng data_rng(9);
  const auto ds = gen_hypercube(4, 6, 400, data_rng);
  Rng rng(10);
  const auto res = multiscale_estimate(ds, 6, default_knn_scales(400), rng);
  REQUIRE(res.profiles.size() == 6);
  REQUIRE(res.per_center_minima.size() == 6);
  CHECK(res.d_summary > 0);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(res.per_center_minima[k].center_index == res.profiles[k].center_index);
    REQUIRE(res.per_center_minima[k].min_d_est);
    CHECK(res.d_summary <= *res.per_center_minima[k].min_d_est);
    if (k) CHECK(res.profiles[k].center_index > res.profiles[k - 1].center_index);
  }
  Rng again(10);
  const auto res2 = multiscale_estimate(ds, 6, default_knn_scales(400), again);
  CHECK(res2.d_summary == res.d_summary);
}

TEST_CASE("no reliable scale") {
  Rng data_rng(11);
  const auto ds = gen_hypercube(2, 3, 50, data_rng);
  Rng rng(1);
  CHECK_THROWS_AS(multiscale_estimate(ds, 3, {Scale::knn(5), Scale::knn(10)}, rng),
                  NoReliableScale);
}

TEST_CASE("center selection") {
  Rng rng(12);
  const auto c = choose_centers(50, 50, rng);
  CHECK(c.size() == 50);
  CHECK(c.back() == 49);
  const auto d = choose_centers(1000, 7, rng);
  CHECK(std::set<std::size_t>(d.begin(), d.end()).size() == 7);
  CHECK(std::is_sorted(d.begin(), d.end()));
}

}
