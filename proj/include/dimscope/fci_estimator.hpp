#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "dimscope/correlation_integral.hpp"
#include "dimscope/data.hpp"
#include "dimscope/fci_model.hpp"

namespace dimscope {

struct MultistartEntry {
  double initial_d;
  double final_rss;
};

/// Least-squares fit of the hypersphere model to an empirical curve.
struct FciFit {
  double d_sphere = 0.0;
  double r_s = 0.0;
  double rss = 0.0;
  std::size_t n_curve_points = 0;
  bool converged = false;
  std::vector<MultistartEntry> multistart_log;
};

struct FitOptions {
  /// Upper bound on d; the start grid runs over powers of two up to it.
  double d_max = 2048.0;
  /// When false only one start is used (`init`, or d = 1 at the default r_s).
  bool multistart = true;
  std::optional<FciParams> init;
  int max_iterations = 300;
};

inline constexpr double kMinFitDimension = 0.1;

/// Bounded Levenberg-Marquardt on (log d, log r_s) from every start of the
/// grid {1, 2, 4, ..., 2^ceil(log2 d_max)} with r_s = median(r)/sqrt(2);
/// keeps the start with the smallest residual sum of squares.
///
/// Box: d in [0.1, d_max], r_s in [1e-6, 10] * max(r). Throws
/// UnfittableCurve if the curve has fewer than 4 points, fewer than 3
/// distinct rho values inside (0, 1), or a single distinct radius.
FciFit fit_fci(const EcdfCurve& curve, const FitOptions& options = {});

/// Settings for the global estimator; every field maps to a CLI flag.
struct EstimatorConfig {
  std::size_t subsample = kDefaultCurvePoints;
  std::size_t min_samples = 5;
  /// Defaults to max(2 D, 2048) when unset.
  std::optional<double> d_max;
  bool multistart = true;
  std::uint64_t seed = 0;
};

struct IdEstimate {
  double d_est = 0.0;  // fit.d_sphere + 1
  FciFit fit;
  std::size_t n_samples_used = 0;
};

double default_d_max(std::size_t ambient_dim);

/// Center, project onto the unit sphere, build and subsample the correlation
/// integral, fit, and add one for the dimension lost to the projection.
IdEstimate estimate_id_global(const DataSet& data,
                              const EstimatorConfig& cfg = {});

/// Same pipeline starting from the pair distances of already projected
/// samples.
IdEstimate estimate_id_from_distances(const DistanceList& projected,
                                      std::size_t n_samples,
                                      std::size_t ambient_dim,
                                      const EstimatorConfig& cfg = {});

}  // namespace dimscope
