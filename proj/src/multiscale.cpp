#include "dimscope/multiscale.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "dimscope/error.hpp"
#include "dimscope/io.hpp"
#include "dimscope/parallel.hpp"

namespace dimscope {

const char* to_string(ScaleKind kind) {
  return kind == ScaleKind::radius ? "radius" : "knn";
}

namespace {

void check_center(const DataSet& data, std::size_t center) {
  if (center >= data.n_samples()) {
    throw InvalidInput("center index " + std::to_string(center) +
                       " out of range for " +
                       std::to_string(data.n_samples()) + " samples");
  }
}

void check_scale(const DataSet& data, const Scale& scale) {
  if (scale.kind == ScaleKind::radius) {
    if (!(scale.value > 0.0)) throw InvalidInput("cutoff radius must be positive");
    return;
  }
  const std::size_t n = scale.count();
  if (n < 1 || n + 1 > data.n_samples() ||
      static_cast<double>(n) != scale.value) {
    throw InvalidInput("neighbor count must be an integer in [1, N-1], got " +
                       format_double(scale.value));
  }
}

void check_scales(const DataSet& data, const std::vector<Scale>& scales) {
  if (scales.empty()) throw InvalidInput("empty scale list");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    check_scale(data, scales[i]);
    if (i > 0 && (scales[i].kind != scales[0].kind ||
                  scales[i].value < scales[i - 1].value)) {
      throw InvalidInput("scales must share one kind and be ascending");
    }
  }
}

// Center first, then the remaining samples by (distance, index).
std::vector<std::size_t> order_by_distance(const std::vector<double>& dist,
                                           std::size_t center) {
  std::vector<std::size_t> order;
  order.reserve(dist.size());
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (i != center) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
  });
  order.insert(order.begin(), center);
  return order;
}

// Number of samples (center included) inside the scale, given the order
// and distances.
std::size_t prefix_size(const std::vector<std::size_t>& order,
                        const std::vector<double>& dist, const Scale& scale) {
  if (scale.kind == ScaleKind::knn) return scale.count() + 1;
  std::size_t k = 1;
  while (k < order.size() && dist[order[k]] < scale.value) ++k;
  return k;
}

LocalEstimate finish(std::optional<double> d_est, bool converged,
                     std::size_t n_neighbors, const MultiscaleConfig& cfg) {
  LocalEstimate out;
  out.d_est = d_est;
  out.n_neighbors = n_neighbors;
  out.reliable = d_est.has_value() && converged && n_neighbors >= cfg.n_reliable;
  return out;
}

template <typename Estimate>
LocalEstimate guarded_local(std::size_t size, const MultiscaleConfig& cfg,
                            Estimate estimate) {
  const std::size_t n_neighbors = size == 0 ? 0 : size - 1;
  if (size < std::max<std::size_t>(cfg.min_fit_samples, 2)) {
    return finish(std::nullopt, false, n_neighbors, cfg);
  }
  try {
    const IdEstimate est = estimate();
    return finish(est.d_est, est.fit.converged, n_neighbors, cfg);
  } catch (const UnfittableCurve&) {
  } catch (const DegenerateSample&) {
  }
  return finish(std::nullopt, false, n_neighbors, cfg);
}

ProfileEntry to_entry(const Scale& scale, const LocalEstimate& est) {
  return {scale, est.n_neighbors, est.d_est, est.reliable};
}

MultiscaleResult summarize(std::vector<ScaleProfile> profiles) {
  MultiscaleResult result;
  result.d_summary = std::numeric_limits<double>::infinity();
  for (const auto& p : profiles) {
    CenterMinimum m{p.center_index, std::nullopt};
    for (const auto& e : p.entries) {
      if (e.reliable && (!m.min_d_est || *e.d_est < *m.min_d_est)) {
        m.min_d_est = e.d_est;
      }
    }
    if (m.min_d_est) result.d_summary = std::min(result.d_summary, *m.min_d_est);
    result.per_center_minima.push_back(m);
  }
  if (!std::isfinite(result.d_summary)) {
    throw NoReliableScale("no reliable local estimate at any center or scale");
  }
  result.profiles = std::move(profiles);
  return result;
}

}  // namespace

std::vector<std::size_t> neighborhood_indices(const DataSet& data,
                                              std::size_t center,
                                              const Scale& scale) {
  check_center(data, center);
  check_scale(data, scale);
  const auto dist = distances_to(data, center);
  auto order = order_by_distance(dist, center);
  order.resize(prefix_size(order, dist, scale));
  return order;
}

DataSet neighborhood(const DataSet& data, std::size_t center,
                     const Scale& scale) {
  return data.select(neighborhood_indices(data, center, scale));
}

LocalEstimate local_id(const DataSet& data, std::size_t center,
                       const Scale& scale, const MultiscaleConfig& cfg) {
  const DataSet local = neighborhood(data, center, scale);
  EstimatorConfig est_cfg = cfg.estimator;
  est_cfg.min_samples = std::max<std::size_t>(cfg.min_fit_samples, 2);
  if (!est_cfg.d_max) est_cfg.d_max = default_d_max(data.ambient_dim());
  return guarded_local(local.n_samples(), cfg,
                       [&] { return estimate_id_global(local, est_cfg); });
}

ScaleProfile scale_profile(const DataSet& data, std::size_t center,
                           const std::vector<Scale>& scales,
                           const MultiscaleConfig& cfg) {
  check_center(data, center);
  check_scales(data, scales);
  ScaleProfile profile{center, {}};
  for (const auto& s : scales) {
    profile.entries.push_back(to_entry(s, local_id(data, center, s, cfg)));
  }
  return profile;
}

std::vector<Scale> default_knn_scales(std::size_t n_samples, std::size_t first) {
  std::vector<Scale> out;
  if (n_samples < 3) return out;
  const std::size_t last = n_samples - 1;
  for (int k = 0;; ++k) {
    const auto n = static_cast<std::size_t>(
        std::llround(static_cast<double>(first) * std::pow(std::sqrt(2.0), k)));
    if (n >= last) break;
    if (out.empty() || n > out.back().count()) out.push_back(Scale::knn(n));
  }
  out.push_back(Scale::knn(last));
  return out;
}

std::vector<Scale> auto_radius_scales(const DataSet& data, std::size_t center) {
  check_center(data, center);
  auto dist = distances_to(data, center);
  dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(center));
  std::sort(dist.begin(), dist.end());
  std::vector<Scale> out;
  if (dist.empty()) return out;
  for (int q = 1; q <= 20; ++q) {
    const double pos = 0.05 * q * static_cast<double>(dist.size() - 1);
    const double v = dist[static_cast<std::size_t>(std::llround(pos))];
    const double r = std::nextafter(v, std::numeric_limits<double>::infinity());
    if (r > 0.0 && (out.empty() || r > out.back().value)) {
      out.push_back(Scale::radius(r));
    }
  }
  return out;
}

std::vector<std::size_t> choose_centers(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || k > n) {
    throw InvalidInput("number of centers must be in [1, N], got " +
                       std::to_string(k));
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(idx[i], idx[i + rng.below(n - i)]);
  }
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

NeighborhoodGeometry::NeighborhoodGeometry(const DataSet& data) : data_(data) {
  require_finite(data);
  const auto x = data.matrix();
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const RowMatrix centered = x.rowwise() - mean;
  gram_ = centered * centered.transpose();
}

DistanceList NeighborhoodGeometry::projected_distances(
    std::span<const std::size_t> indices) const {
  const std::size_t k = indices.size();
  if (k < 2) throw InvalidInput("a neighborhood needs at least 2 samples");
  std::vector<double> row_mean(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    double s = 0.0;
    for (std::size_t b = 0; b < k; ++b) s += gram_(indices[a], indices[b]);
    row_mean[a] = s / static_cast<double>(k);
  }
  const double grand =
      std::accumulate(row_mean.begin(), row_mean.end(), 0.0) /
      static_cast<double>(k);
  std::vector<double> norms(k);
  double max_norm = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    const double c = gram_(indices[a], indices[a]) - 2.0 * row_mean[a] + grand;
    norms[a] = std::sqrt(std::max(c, 0.0));
    max_norm = std::max(max_norm, norms[a]);
  }
  for (std::size_t a = 0; a < k; ++a) {
    if (!(norms[a] >= kBarycenterTolerance * max_norm) || norms[a] == 0.0) {
      throw DegenerateSample(indices[a],
                             "sample " + std::to_string(indices[a]) +
                                 " coincides with the neighborhood barycenter");
    }
  }
  DistanceList out;
  out.values.reserve(k * (k - 1) / 2);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      const double c = gram_(indices[a], indices[b]) - row_mean[a] -
                       row_mean[b] + grand;
      const double cosine = c / (norms[a] * norms[b]);
      out.values.push_back(std::sqrt(std::clamp(2.0 - 2.0 * cosine, 0.0, 4.0)));
    }
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

LocalEstimate NeighborhoodGeometry::local_id(
    std::span<const std::size_t> indices, const MultiscaleConfig& cfg) const {
  EstimatorConfig est_cfg = cfg.estimator;
  if (!est_cfg.d_max) est_cfg.d_max = default_d_max(data_.ambient_dim());
  return guarded_local(indices.size(), cfg, [&] {
    return estimate_id_from_distances(projected_distances(indices),
                                      indices.size(), data_.ambient_dim(),
                                      est_cfg);
  });
}

ScaleProfile NeighborhoodGeometry::scale_profile(
    std::size_t center, const std::vector<Scale>& scales,
    const MultiscaleConfig& cfg) const {
  check_center(data_, center);
  check_scales(data_, scales);
  const auto dist = distances_to(data_, center);
  const auto order = order_by_distance(dist, center);
  ScaleProfile profile{center, {}};
  for (const auto& s : scales) {
    const std::size_t k = prefix_size(order, dist, s);
    const std::span<const std::size_t> idx(order.data(), k);
    profile.entries.push_back(to_entry(s, local_id(idx, cfg)));
  }
  return profile;
}

MultiscaleResult multiscale_estimate(const DataSet& data, std::size_t n_centers,
                                     const std::vector<Scale>& scales, Rng& rng,
                                     const MultiscaleConfig& cfg) {
  check_scales(data, scales);
  return multiscale_estimate(
      data, n_centers, [&](std::size_t) { return scales; }, rng, cfg);
}

MultiscaleResult multiscale_estimate(const DataSet& data, std::size_t n_centers,
                                     const ScaleSelector& scales, Rng& rng,
                                     const MultiscaleConfig& cfg) {
  const auto centers = choose_centers(data.n_samples(), n_centers, rng);
  const NeighborhoodGeometry geometry(data);
  std::vector<ScaleProfile> profiles(centers.size());
  parallel_for(centers.size(), [&](std::size_t i) {
    profiles[i] = geometry.scale_profile(centers[i], scales(centers[i]), cfg);
  });
  return summarize(std::move(profiles));
}

void write_profiles_csv(std::ostream& out,
                        const std::vector<ScaleProfile>& profiles) {
  out << "center,scale_kind,scale,n_neighbors,d_est,reliable\n";
  for (const auto& p : profiles) {
    for (const auto& e : p.entries) {
      out << p.center_index << ',' << to_string(e.scale.kind) << ','
          << format_double(e.scale.value) << ',' << e.n_neighbors << ','
          << (e.d_est ? format_double(*e.d_est) : std::string()) << ','
          << (e.reliable ? 1 : 0) << '\n';
    }
  }
}

}  // namespace dimscope
