#include "dimscope/fci_estimator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "dimscope/error.hpp"

namespace dimscope {

namespace {

struct Box {
  double log_d_lo, log_d_hi, log_r_lo, log_r_hi;
};

class CurveObjective {
 public:
  explicit CurveObjective(const EcdfCurve& curve)
      : r_(curve.r), rho_(curve.rho) {}

  std::size_t size() const { return r_.size(); }

  // residuals rho_k - model(r_k); returns the sum of squares
  double residuals(double d, double r_s, std::vector<double>& out) const {
    const FciShape shape(d);
    out.resize(r_.size());
    double rss = 0.0;
    for (std::size_t k = 0; k < r_.size(); ++k) {
      out[k] = rho_[k] - shape.cdf(r_[k] / r_s);
      rss += out[k] * out[k];
    }
    return rss;
  }

  double rss(double d, double r_s) const {
    std::vector<double> tmp;
    return residuals(d, r_s, tmp);
  }

  // Jacobian of the residuals with respect to (log d, log r_s), stored
  // interleaved. The d column uses central differences; the r_s column uses
  // the closed-form radial density, since the model depends on r_s only
  // through r / r_s.
  void jacobian(double d, double r_s, std::vector<double>& jac) const {
    const double hd = 1e-5 * std::max(1.0, d);
    const FciShape plus(d + hd), minus(d - hd), mid(d);
    jac.resize(2 * r_.size());
    for (std::size_t k = 0; k < r_.size(); ++k) {
      const double rbar = r_[k] / r_s;
      const double dm_dd = (plus.cdf(rbar) - minus.cdf(rbar)) / (2.0 * hd);
      // residual = rho - model; d(model)/d(log r_s) = -rbar * density
      jac[2 * k] = -dm_dd * d;
      jac[2 * k + 1] = mid.density(rbar) * rbar;
    }
  }

 private:
  const std::vector<double>& r_;
  const std::vector<double>& rho_;
};

struct StartResult {
  double log_d;
  double log_r;
  double rss;
  bool converged;
};

StartResult levenberg_marquardt(const CurveObjective& obj, double log_d,
                                double log_r, const Box& box,
                                int max_iterations) {
  auto clamp_d = [&](double v) { return std::clamp(v, box.log_d_lo, box.log_d_hi); };
  auto clamp_r = [&](double v) { return std::clamp(v, box.log_r_lo, box.log_r_hi); };
  log_d = clamp_d(log_d);
  log_r = clamp_r(log_r);

  std::vector<double> res, trial_res, jac;
  double f = obj.residuals(std::exp(log_d), std::exp(log_r), res);
  double lambda = 1e-3;
  bool converged = false;

  for (int iter = 0; iter < max_iterations; ++iter) {
    if (f == 0.0) {
      converged = true;
      break;
    }
    obj.jacobian(std::exp(log_d), std::exp(log_r), jac);
    double a00 = 0, a01 = 0, a11 = 0, g0 = 0, g1 = 0;
    for (std::size_t k = 0; k < res.size(); ++k) {
      const double j0 = jac[2 * k], j1 = jac[2 * k + 1];
      a00 += j0 * j0;
      a01 += j0 * j1;
      a11 += j1 * j1;
      g0 += j0 * res[k];
      g1 += j1 * res[k];
    }
    if (std::hypot(g0, g1) < 1e-8) {
      converged = true;
      break;
    }

    bool accepted = false;
    while (lambda < 1e16) {
      const double floor = 1e-12 * std::max({a00, a11, 1e-300});
      const double m00 = a00 + lambda * std::max(a00, floor);
      const double m11 = a11 + lambda * std::max(a11, floor);
      const double det = m00 * m11 - a01 * a01;
      if (!(det > 0.0)) {
        lambda *= 10.0;
        continue;
      }
      const double step_d = (-g0 * m11 + g1 * a01) / det;
      const double step_r = (-g1 * m00 + g0 * a01) / det;
      const double nd = clamp_d(log_d + step_d);
      const double nr = clamp_r(log_r + step_r);
      if (nd == log_d && nr == log_r) {
        lambda *= 10.0;
        continue;
      }
      const double ft = obj.residuals(std::exp(nd), std::exp(nr), trial_res);
      if (ft < f) {
        const double rel = (f - ft) / f;
        log_d = nd;
        log_r = nr;
        f = ft;
        res.swap(trial_res);
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        if (rel < 1e-10) converged = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      // no descent direction left at this precision
      converged = true;
      break;
    }
    if (converged) break;
  }
  return {log_d, log_r, f, converged};
}

void check_fittable(const EcdfCurve& curve) {
  if (curve.size() < 4) {
    throw UnfittableCurve("curve has " + std::to_string(curve.size()) +
                          " points; at least 4 are needed");
  }
  std::set<double> inner;
  for (double v : curve.rho) {
    if (v > 0.0 && v < 1.0) inner.insert(v);
  }
  if (inner.size() < 3) {
    throw UnfittableCurve("curve has fewer than 3 distinct levels inside (0, 1)");
  }
  const auto [lo, hi] = std::minmax_element(curve.r.begin(), curve.r.end());
  if (!(*hi > *lo) || !(*hi > 0.0)) {
    throw UnfittableCurve("curve has a single distinct radius");
  }
}

}  // namespace

FciFit fit_fci(const EcdfCurve& curve, const FitOptions& options) {
  check_fittable(curve);
  const double r_max_data = *std::max_element(curve.r.begin(), curve.r.end());
  const double d_max = std::max(options.d_max, 1.0);
  const Box box{std::log(kMinFitDimension), std::log(d_max),
                std::log(1e-6 * r_max_data), std::log(10.0 * r_max_data)};

  std::vector<double> sorted_r = curve.r;
  std::nth_element(sorted_r.begin(),
                   sorted_r.begin() + static_cast<std::ptrdiff_t>(sorted_r.size() / 2),
                   sorted_r.end());
  double median = sorted_r[sorted_r.size() / 2];
  if (!(median > 0.0)) median = r_max_data / 2.0;
  const double default_rs = median / std::sqrt(2.0);

  std::vector<FciParams> starts;
  if (options.init) starts.push_back(*options.init);
  if (options.multistart) {
    const int top = static_cast<int>(std::ceil(std::log2(d_max)));
    for (int e = 0; e <= top; ++e) {
      starts.push_back({std::ldexp(1.0, e), default_rs});
    }
  } else if (!options.init) {
    starts.push_back({1.0, default_rs});
  }

  const CurveObjective objective(curve);
  FciFit best;
  best.rss = std::numeric_limits<double>::infinity();
  best.n_curve_points = curve.size();
  for (const auto& start : starts) {
    if (!(start.d > 0.0) || !(start.r_s > 0.0)) {
      throw DomainError("initial parameters must be positive");
    }
    const StartResult res =
        levenberg_marquardt(objective, std::log(start.d), std::log(start.r_s),
                            box, options.max_iterations);
    best.multistart_log.push_back({start.d, res.rss});
    if (res.rss < best.rss) {
      best.rss = res.rss;
      best.d_sphere = std::exp(res.log_d);
      best.r_s = std::exp(res.log_r);
      best.converged = res.converged;
    }
  }
  return best;
}

double default_d_max(std::size_t ambient_dim) {
  return std::max(2.0 * static_cast<double>(ambient_dim), 2048.0);
}

IdEstimate estimate_id_from_distances(const DistanceList& projected,
                                      std::size_t n_samples,
                                      std::size_t ambient_dim,
                                      const EstimatorConfig& cfg) {
  const EcdfCurve full = empirical_correlation_integral(projected);
  Rng rng(cfg.seed);
  const EcdfCurve curve = subsample_curve(full, cfg.subsample, rng);
  FitOptions options;
  options.d_max = cfg.d_max.value_or(default_d_max(ambient_dim));
  options.multistart = cfg.multistart;
  IdEstimate out;
  out.fit = fit_fci(curve, options);
  out.d_est = out.fit.d_sphere + 1.0;
  out.n_samples_used = n_samples;
  return out;
}

IdEstimate estimate_id_global(const DataSet& data, const EstimatorConfig& cfg) {
  const std::size_t floor = std::max<std::size_t>(cfg.min_samples, 2);
  if (data.n_samples() < floor) {
    throw InvalidInput("estimation needs at least " + std::to_string(floor) +
                       " samples, got " + std::to_string(data.n_samples()));
  }
  const DataSet projected = center_and_project(data);
  return estimate_id_from_distances(pairwise_distances(projected),
                                    data.n_samples(), data.ambient_dim(), cfg);
}

}  // namespace dimscope
