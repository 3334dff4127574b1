#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace dimscope {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// N samples in R^D, stored row-major. Immutable once built; row order
/// identifies samples.
class DataSet {
 public:
  DataSet() = default;
  /// `values` holds n*d entries, row-major. Throws InvalidInput on a size
  /// mismatch or a zero dimension with nonzero rows.
  DataSet(std::size_t n, std::size_t d, std::vector<double> values);
  static DataSet from_rows(const std::vector<std::vector<double>>& rows);
  static DataSet from_matrix(const RowMatrix& m);

  std::size_t n_samples() const noexcept { return n_; }
  std::size_t ambient_dim() const noexcept { return d_; }
  bool empty() const noexcept { return n_ == 0; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * d_, d_};
  }
  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * d_ + j];
  }
  std::span<const double> values() const noexcept { return values_; }

  Eigen::Map<const RowMatrix> matrix() const {
    return {values_.data(), static_cast<Eigen::Index>(n_),
            static_cast<Eigen::Index>(d_)};
  }

  /// Rows `indices`, in the given order.
  DataSet select(std::span<const std::size_t> indices) const;

  friend bool operator==(const DataSet&, const DataSet&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
};

/// Throws InvalidInput naming the first row holding a NaN or infinity.
void require_finite(const DataSet& data);

/// All N(N-1)/2 Euclidean pair distances, sorted ascending.
struct DistanceList {
  std::vector<double> values;
  std::size_t size() const noexcept { return values.size(); }
};

/// Unsorted pair distances in (i<j) lexicographic order.
std::vector<double> pair_distances_unsorted(const DataSet& data);

/// Requires N >= 2 and finite entries.
DistanceList pairwise_distances(const DataSet& data);

/// Euclidean distances from row `center` to every row.
std::vector<double> distances_to(const DataSet& data, std::size_t center);

/// Subtracts the empirical mean and rescales every row to unit norm.
/// Throws DegenerateSample when a centered row has norm below
/// 1e-9 * (largest centered norm).
DataSet center_and_project(const DataSet& data);

inline constexpr double kBarycenterTolerance = 1e-9;

}  // namespace dimscope
