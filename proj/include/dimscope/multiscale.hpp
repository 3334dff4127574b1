#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dimscope/data.hpp"
#include "dimscope/fci_estimator.hpp"
#include "dimscope/rng.hpp"

namespace dimscope {

enum class ScaleKind { radius, knn };

/// Neighborhood size: a cutoff radius, or a neighbor count n
/// (1 <= n <= N-1, stored as a double).
struct Scale {
  ScaleKind kind = ScaleKind::knn;
  double value = 0.0;

  static Scale radius(double r) { return {ScaleKind::radius, r}; }
  static Scale knn(std::size_t n) {
    return {ScaleKind::knn, static_cast<double>(n)};
  }
  std::size_t count() const { return static_cast<std::size_t>(value); }
};

const char* to_string(ScaleKind kind);

struct MultiscaleConfig {
  EstimatorConfig estimator;
  /// Local estimates from fewer neighbors are flagged unreliable.
  std::size_t n_reliable = 20;
  /// Smaller neighborhoods are not fitted at all.
  std::size_t min_fit_samples = 5;
};

struct LocalEstimate {
  std::optional<double> d_est;
  std::size_t n_neighbors = 0;
  bool reliable = false;
};

struct ProfileEntry {
  Scale scale;
  std::size_t n_neighbors = 0;
  std::optional<double> d_est;
  bool reliable = false;
};

struct ScaleProfile {
  std::size_t center_index = 0;
  std::vector<ProfileEntry> entries;
};

struct CenterMinimum {
  std::size_t center_index = 0;
  std::optional<double> min_d_est;  // over reliable entries
};

struct MultiscaleResult {
  std::vector<ScaleProfile> profiles;  // sorted by center index
  double d_summary = 0.0;
  std::vector<CenterMinimum> per_center_minima;
};

/// Indices of the neighborhood of `center`, center first. Radius scales keep
/// samples strictly closer than the cutoff; knn scales keep the n nearest
/// other samples, ties broken by ascending index.
std::vector<std::size_t> neighborhood_indices(const DataSet& data,
                                              std::size_t center,
                                              const Scale& scale);

DataSet neighborhood(const DataSet& data, std::size_t center,
                     const Scale& scale);

/// Global FCI estimate restricted to the neighborhood. Failures (too few
/// samples, unfittable curve, degenerate sample) come back as an absent
/// d_est rather than an exception.
LocalEstimate local_id(const DataSet& data, std::size_t center,
                       const Scale& scale, const MultiscaleConfig& cfg = {});

/// local_id at each scale; scales must be ascending and of one kind.
ScaleProfile scale_profile(const DataSet& data, std::size_t center,
                           const std::vector<Scale>& scales,
                           const MultiscaleConfig& cfg = {});

/// knn grid 20, 28, 40, ... (ratio sqrt 2, rounded) capped by and ending at
/// N - 1.
std::vector<Scale> default_knn_scales(std::size_t n_samples,
                                      std::size_t first = 20);

/// Radii at the {0.05, 0.10, ..., 1.0} quantiles of the distances from
/// `center` to the other samples; the last radius is nudged up so the
/// farthest sample is included.
std::vector<Scale> auto_radius_scales(const DataSet& data, std::size_t center);

using ScaleSelector = std::function<std::vector<Scale>(std::size_t center)>;

/// Profiles around `n_centers` distinct random centers. Each center's minimum
/// over reliable entries is reported, and d_summary is the smallest of them.
/// Throws NoReliableScale if no reliable entry exists.
MultiscaleResult multiscale_estimate(const DataSet& data, std::size_t n_centers,
                                     const std::vector<Scale>& scales, Rng& rng,
                                     const MultiscaleConfig& cfg = {});
MultiscaleResult multiscale_estimate(const DataSet& data, std::size_t n_centers,
                                     const ScaleSelector& scales, Rng& rng,
                                     const MultiscaleConfig& cfg = {});

/// Uniform draw of k distinct indices from [0, n), returned sorted.
std::vector<std::size_t> choose_centers(std::size_t n, std::size_t k, Rng& rng);

/// Evaluates neighborhoods from one precomputed Gram matrix of the centered
/// data. Pair distances of a projected subset are read off the Gram entries
/// in O(k^2) instead of recomputing them in the ambient space.
class NeighborhoodGeometry {
 public:
  explicit NeighborhoodGeometry(const DataSet& data);

  const DataSet& data() const noexcept { return data_; }

  /// Sorted pair distances of center_and_project(data.select(indices)).
  /// Throws DegenerateSample with the global row index.
  DistanceList projected_distances(std::span<const std::size_t> indices) const;

  LocalEstimate local_id(std::span<const std::size_t> indices,
                         const MultiscaleConfig& cfg) const;

  ScaleProfile scale_profile(std::size_t center, const std::vector<Scale>& scales,
                             const MultiscaleConfig& cfg) const;

 private:
  const DataSet& data_;
  RowMatrix gram_;
};

/// "center,scale_kind,scale,n_neighbors,d_est,reliable"; absent estimates
/// are left empty.
void write_profiles_csv(std::ostream& out,
                        const std::vector<ScaleProfile>& profiles);

}  // namespace dimscope
