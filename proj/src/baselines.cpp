#include "dimscope/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Eigenvalues>

#include "dimscope/correlation_integral.hpp"
#include "dimscope/error.hpp"
#include "dimscope/io.hpp"

namespace dimscope {

double sorted_quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw InvalidInput("quantile of an empty list");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

CorrDimFit corrdim_estimate(const DataSet& data, QuantileBand band) {
  if (data.n_samples() < 10) {
    throw InvalidInput("correlation dimension needs at least 10 samples");
  }
  if (!(band.lo >= 0.0) || !(band.hi <= 1.0) || !(band.lo < band.hi)) {
    throw InvalidInput("quantile band must satisfy 0 <= lo < hi <= 1");
  }
  const EcdfCurve curve = empirical_correlation_integral(pairwise_distances(data));
  const double r_lo = sorted_quantile(curve.r, band.lo);
  const double r_hi = sorted_quantile(curve.r, band.hi);

  // ordinary least squares on (log r, log rho)
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  std::size_t n = 0;
  const auto first = std::lower_bound(curve.r.begin(), curve.r.end(), r_lo);
  for (auto k = static_cast<std::size_t>(first - curve.r.begin());
       k < curve.size() && curve.r[k] <= r_hi; ++k) {
    if (!(curve.r[k] > 0.0) || !(curve.rho[k] > 0.0)) continue;
    const double x = std::log(curve.r[k]);
    const double y = std::log(curve.rho[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++n;
  }
  const double nn = static_cast<double>(n);
  const double vxx = sxx - sx * sx / nn;
  if (n < 5 || !(vxx > 0.0)) {
    throw UnfittableCurve("only " + std::to_string(n) +
                          " usable curve points inside the quantile band");
  }
  const double vxy = sxy - sx * sy / nn;
  const double vyy = syy - sy * sy / nn;
  CorrDimFit fit;
  fit.d_est = vxy / vxx;
  fit.band = band;
  fit.n_points_used = n;
  fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
  return fit;
}

PcaSpectrum pca_spectrum(const DataSet& data) {
  const std::size_t n = data.n_samples();
  const std::size_t d = data.ambient_dim();
  if (n < 2) throw InvalidInput("PCA needs at least 2 samples");
  require_finite(data);
  const auto x = data.matrix();
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::MatrixXd m;
  if (d <= n) {
    m = centered.transpose() * centered;
  } else {
    m = centered * centered.transpose();
  }
  m /= static_cast<double>(n);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      m, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = solver.eigenvalues();  // ascending

  PcaSpectrum out;
  out.eigenvalues.assign(d, 0.0);
  const auto k = static_cast<std::size_t>(ev.size());
  for (std::size_t i = 0; i < k; ++i) {
    out.eigenvalues[i] = ev(static_cast<Eigen::Index>(k - 1 - i));
  }
  const double top = std::max(out.eigenvalues.front(), 0.0);
  const double tol = static_cast<double>(std::max(n, d)) *
                     std::numeric_limits<double>::epsilon() * top;
  for (double& v : out.eigenvalues) {
    if (v <= tol) v = 0.0;
  }
  return out;
}

namespace {

std::vector<double> gap_ratios(const PcaSpectrum& spectrum) {
  const auto& ev = spectrum.eigenvalues;
  if (ev.empty()) throw DegenerateSpectrum("empty spectrum");
  if (!(ev.front() > 0.0)) throw DegenerateSpectrum("all eigenvalues are zero");
  std::vector<double> ratios(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    const double next = i + 1 < ev.size() ? ev[i + 1] : 0.0;
    ratios[i] = ev[i] / std::max(next, 1e-300);
  }
  return ratios;
}

}  // namespace

std::vector<std::size_t> gap_ranking(const PcaSpectrum& spectrum) {
  const auto ratios = gap_ratios(spectrum);
  std::vector<std::size_t> order(ratios.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ratios[a] > ratios[b];
  });
  for (auto& i : order) ++i;
  return order;
}

std::size_t gpca_estimate(const PcaSpectrum& spectrum, PcaCriterion criterion,
                          double mass_fraction) {
  if (criterion == PcaCriterion::gap) return gap_ranking(spectrum).front();
  const auto& ev = spectrum.eigenvalues;
  if (ev.empty() || !(ev.front() > 0.0)) {
    throw DegenerateSpectrum("all eigenvalues are zero");
  }
  const double total = std::accumulate(ev.begin(), ev.end(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < ev.size(); ++i) {
    acc += ev[i];
    if (acc >= mass_fraction * total) return i + 1;
  }
  return ev.size();
}

void write_spectrum_csv(std::ostream& out, const PcaSpectrum& spectrum) {
  out << "index,eigenvalue\n";
  for (std::size_t i = 0; i < spectrum.eigenvalues.size(); ++i) {
    out << i + 1 << ',' << format_double(spectrum.eigenvalues[i]) << '\n';
  }
}

MpcaProfile mpca_profile(const DataSet& data,
                         const std::vector<std::size_t>& centers,
                         const std::vector<double>& radii,
                         double mass_fraction) {
  const std::size_t d = data.ambient_dim();
  std::vector<std::vector<double>> center_dist;
  center_dist.reserve(centers.size());
  for (std::size_t c : centers) {
    if (c >= data.n_samples()) throw InvalidInput("center index out of range");
    center_dist.push_back(distances_to(data, c));
  }

  MpcaProfile profile;
  for (double radius : radii) {
    MpcaScale scale;
    scale.radius = radius;
    scale.mean_eigenvalues.assign(d, 0.0);
    for (const auto& dist : center_dist) {
      std::vector<std::size_t> ball;
      for (std::size_t i = 0; i < dist.size(); ++i) {
        if (dist[i] < radius) ball.push_back(i);
      }
      if (ball.size() < kMinBallSamples) continue;
      const PcaSpectrum local = pca_spectrum(data.select(ball));
      for (std::size_t k = 0; k < d; ++k) {
        scale.mean_eigenvalues[k] += local.eigenvalues[k];
      }
      ++scale.n_balls;
    }
    if (scale.n_balls == 0) continue;
    for (double& v : scale.mean_eigenvalues) v /= static_cast<double>(scale.n_balls);
    try {
      scale.mass_estimate = gpca_estimate({scale.mean_eigenvalues},
                                          PcaCriterion::mass, mass_fraction);
    } catch (const DegenerateSpectrum&) {
      continue;
    }
    profile.scales.push_back(std::move(scale));
  }
  if (!profile.scales.empty()) {
    const auto [lo, hi] = std::minmax_element(
        profile.scales.begin(), profile.scales.end(),
        [](const MpcaScale& a, const MpcaScale& b) {
          return a.mass_estimate < b.mass_estimate;
        });
    profile.bound_lo = lo->mass_estimate;
    profile.bound_hi = hi->mass_estimate;
  }
  return profile;
}

void write_mpca_csv(std::ostream& out, const MpcaProfile& profile) {
  out << "radius,eig_index,avg_eigenvalue\n";
  for (const auto& s : profile.scales) {
    for (std::size_t k = 0; k < s.mean_eigenvalues.size(); ++k) {
      out << format_double(s.radius) << ',' << k + 1 << ','
          << format_double(s.mean_eigenvalues[k]) << '\n';
    }
  }
}

}  // namespace dimscope
