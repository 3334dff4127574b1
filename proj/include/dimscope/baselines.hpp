#pragma once

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dimscope/data.hpp"
#include "dimscope/multiscale.hpp"

namespace dimscope {

// ---------------------------------------------------------------------------
// Correlation dimension

struct QuantileBand {
  double lo = 0.0005;
  double hi = 0.05;
};

struct CorrDimFit {
  double d_est = 0.0;
  QuantileBand band;
  std::size_t n_points_used = 0;
  double r_squared = 0.0;
};

/// Slope of log rho against log r over the curve points whose radius lies
/// between the band's quantiles of the pair distances. Requires N >= 10 and
/// 0 <= lo < hi <= 1; throws UnfittableCurve when fewer than 5 points with
/// r > 0 and rho > 0 fall in the band.
CorrDimFit corrdim_estimate(const DataSet& data, QuantileBand band = {});

/// Linear-interpolated quantile of an ascending list.
double sorted_quantile(const std::vector<double>& sorted, double q);

// ---------------------------------------------------------------------------
// PCA

/// Covariance eigenvalues, descending, length D. Values below
/// max(N, D) * eps * largest are reported as exact zeros.
struct PcaSpectrum {
  std::vector<double> eigenvalues;
};

/// Spectrum of the mean-centered covariance (1/N) Xc^T Xc. Uses the N x N
/// Gram matrix instead when N < D; both share their nonzero eigenvalues.
PcaSpectrum pca_spectrum(const DataSet& data);

enum class PcaCriterion { gap, mass };

inline constexpr double kDefaultMassFraction = 0.95;

/// gap: argmax_i lambda_i / lambda_{i+1} for i = 1..D, with lambda_{D+1} = 0
/// and denominators floored at 1e-300. mass: smallest k whose leading
/// eigenvalues hold `mass_fraction` of the total. Throws DegenerateSpectrum
/// on an all-zero spectrum.
std::size_t gpca_estimate(const PcaSpectrum& spectrum, PcaCriterion criterion,
                          double mass_fraction = kDefaultMassFraction);

/// Positions i (1-based) ordered by decreasing lambda_i / lambda_{i+1};
/// the first element is the gap estimate.
std::vector<std::size_t> gap_ranking(const PcaSpectrum& spectrum);

void write_spectrum_csv(std::ostream& out, const PcaSpectrum& spectrum);

// ---------------------------------------------------------------------------
// Multiscale PCA

struct MpcaScale {
  double radius = 0.0;
  std::size_t n_balls = 0;                 // balls with >= 5 samples
  std::vector<double> mean_eigenvalues;    // length D, descending
  std::size_t mass_estimate = 0;
};

struct MpcaProfile {
  std::vector<MpcaScale> scales;  // only radii with at least one ball
  std::size_t bound_lo = 0;       // min mass estimate across scales
  std::size_t bound_hi = 0;       // max mass estimate across scales
};

inline constexpr std::size_t kMinBallSamples = 5;

/// For each radius, averages the local PCA spectra of the balls (distance
/// strictly below the radius) around `centers`, skipping balls with fewer
/// than 5 samples, and applies the mass criterion to the average.
MpcaProfile mpca_profile(const DataSet& data,
                         const std::vector<std::size_t>& centers,
                         const std::vector<double>& radii,
                         double mass_fraction = kDefaultMassFraction);

/// "radius,eig_index,avg_eigenvalue".
void write_mpca_csv(std::ostream& out, const MpcaProfile& profile);

}  // namespace dimscope
