#include "dimscope/correlation_integral.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "dimscope/error.hpp"
#include "dimscope/io.hpp"

namespace dimscope {

double EcdfCurve::evaluate(double x) const {
  if (r.empty()) return 0.0;
  if (x >= r.back()) return 1.0;
  const auto it = std::upper_bound(r.begin(), r.end(), x);
  if (it == r.begin()) return 0.0;
  const auto k = static_cast<std::size_t>(it - r.begin());
  // rho of the next retained point is the fraction strictly below it,
  // which for a full curve equals the count of distances <= x.
  return rho[k];
}

EcdfCurve empirical_correlation_integral(const DistanceList& dists) {
  if (dists.values.empty()) {
    throw InvalidInput("correlation integral of an empty distance list");
  }
  const std::size_t m = dists.size();
  EcdfCurve curve;
  curve.total_pairs = m;
  curve.r = dists.values;
  curve.rho.resize(m);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    curve.rho[k] = static_cast<double>(k) * inv;
  }
  return curve;
}

EcdfCurve subsample_curve(const EcdfCurve& curve, std::size_t max_points,
                          Rng& rng) {
  if (max_points < 2) {
    throw InvalidInput("subsample size must be at least 2");
  }
  const std::size_t n = curve.size();
  if (n <= max_points) return curve;

  // partial Fisher-Yates over the index set
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < max_points; ++i) {
    std::swap(idx[i], idx[i + rng.below(n - i)]);
  }
  idx.resize(max_points);
  std::sort(idx.begin(), idx.end());

  EcdfCurve out;
  out.total_pairs = curve.total_pairs;
  out.r.reserve(max_points);
  out.rho.reserve(max_points);
  for (std::size_t i : idx) {
    out.r.push_back(curve.r[i]);
    out.rho.push_back(curve.rho[i]);
  }
  return out;
}

void write_curve_csv(std::ostream& out, const EcdfCurve& curve) {
  out << "r,rho\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out << format_double(curve.r[k]) << ',' << format_double(curve.rho[k])
        << '\n';
  }
}

}  // namespace dimscope
