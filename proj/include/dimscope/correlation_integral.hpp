#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "dimscope/data.hpp"
#include "dimscope/rng.hpp"

namespace dimscope {

/// Empirical correlation integral: sorted distances r_k paired with the
/// fraction of pairs strictly below them, (k-1)/M. Ties are kept.
struct EcdfCurve {
  std::vector<double> r;
  std::vector<double> rho;
  /// M of the distance list the curve was built from.
  std::size_t total_pairs = 0;

  std::size_t size() const noexcept { return r.size(); }

  /// Fraction of pairs with distance <= x. Exact for a full curve; for a
  /// subsampled curve it is the step interpolation of the retained points.
  double evaluate(double x) const;
};

/// Throws InvalidInput on an empty list.
EcdfCurve empirical_correlation_integral(const DistanceList& dists);

inline constexpr std::size_t kDefaultCurvePoints = 1000;

/// Uniform random subset of min(max_points, |curve|) points, kept in r order.
EcdfCurve subsample_curve(const EcdfCurve& curve, std::size_t max_points,
                          Rng& rng);

/// "r,rho" CSV, one point per line.
void write_curve_csv(std::ostream& out, const EcdfCurve& curve);

}  // namespace dimscope
