#include "dimscope/data.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dimscope/error.hpp"
#include "dimscope/parallel.hpp"

namespace dimscope {

DataSet::DataSet(std::size_t n, std::size_t d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
  if (values_.size() != n_ * d_) {
    throw InvalidInput("dataset shape " + std::to_string(n_) + "x" +
                       std::to_string(d_) + " does not match " +
                       std::to_string(values_.size()) + " values");
  }
  if (d_ == 0 && n_ > 0) throw InvalidInput("dataset has zero dimensions");
}

DataSet DataSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t d = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw InvalidInput("row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " fields, expected " +
                         std::to_string(d));
    }
    values.insert(values.end(), rows[i].begin(), rows[i].end());
  }
  return {rows.size(), d, std::move(values)};
}

DataSet DataSet::from_matrix(const RowMatrix& m) {
  return {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()),
          std::vector<double>(m.data(), m.data() + m.size())};
}

DataSet DataSet::select(std::span<const std::size_t> indices) const {
  std::vector<double> out;
  out.reserve(indices.size() * d_);
  for (std::size_t i : indices) {
    const auto r = row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  return {indices.size(), d_, std::move(out)};
}

void require_finite(const DataSet& data) {
  for (std::size_t i = 0; i < data.n_samples(); ++i) {
    for (double v : data.row(i)) {
      if (!std::isfinite(v)) {
        throw InvalidInput("non-finite value in row " + std::to_string(i));
      }
    }
  }
}

namespace {

constexpr std::size_t kBlock = 64;

inline double squared_distance(const double* a, const double* b,
                               std::size_t d) {
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return s;
}

inline std::size_t pair_offset(std::size_t i, std::size_t n) {
  // index of pair (i, i+1) in row-major upper-triangular order
  return i * n - i * (i + 1) / 2;
}

}  // namespace

std::vector<double> pair_distances_unsorted(const DataSet& data) {
  const std::size_t n = data.n_samples();
  const std::size_t d = data.ambient_dim();
  if (n < 2) {
    throw InvalidInput("pairwise distances need at least 2 samples, got " +
                       std::to_string(n));
  }
  require_finite(data);
  std::vector<double> out(n * (n - 1) / 2);
  const double* x = data.values().data();
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  parallel_for(n_blocks, [&](std::size_t bi) {
    const std::size_t i0 = bi * kBlock;
    const std::size_t i1 = std::min(n, i0 + kBlock);
    for (std::size_t j0 = i0; j0 < n; j0 += kBlock) {
      const std::size_t j1 = std::min(n, j0 + kBlock);
      for (std::size_t i = i0; i < i1; ++i) {
        const std::size_t base = pair_offset(i, n) - (i + 1);
        for (std::size_t j = std::max(j0, i + 1); j < j1; ++j) {
          out[base + j] = std::sqrt(squared_distance(x + i * d, x + j * d, d));
        }
      }
    }
  });
  return out;
}

DistanceList pairwise_distances(const DataSet& data) {
  DistanceList list{pair_distances_unsorted(data)};
  std::sort(list.values.begin(), list.values.end());
  return list;
}

std::vector<double> distances_to(const DataSet& data, std::size_t center) {
  const std::size_t d = data.ambient_dim();
  const double* x = data.values().data();
  std::vector<double> out(data.n_samples());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::sqrt(squared_distance(x + i * d, x + center * d, d));
  }
  return out;
}

DataSet center_and_project(const DataSet& data) {
  const std::size_t n = data.n_samples();
  const std::size_t d = data.ambient_dim();
  if (n < 2) {
    throw InvalidInput("centering needs at least 2 samples, got " +
                       std::to_string(n));
  }
  require_finite(data);
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    for (std::size_t k = 0; k < d; ++k) mean[k] += r[k];
  }
  for (double& m : mean) m /= static_cast<double>(n);

  std::vector<double> out(n * d);
  std::vector<double> norms(n);
  double max_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = data.row(i);
    double s = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double v = r[k] - mean[k];
      out[i * d + k] = v;
      s += v * v;
    }
    norms[i] = std::sqrt(s);
    max_norm = std::max(max_norm, norms[i]);
  }
  const double tol = kBarycenterTolerance * max_norm;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(norms[i] >= tol) || norms[i] == 0.0) {
      throw DegenerateSample(
          i, "sample " + std::to_string(i) +
                 " coincides with the center of mass and cannot be projected");
    }
    for (std::size_t k = 0; k < d; ++k) out[i * d + k] /= norms[i];
  }
  return {n, d, std::move(out)};
}

}  // namespace dimscope
