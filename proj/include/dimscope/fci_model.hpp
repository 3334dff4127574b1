#pragma once

namespace dimscope {

/// Parameters of the hypersphere correlation-integral model: sphere
/// dimension `d` and radius `r_s`, both positive.
struct FciParams {
  double d = 1.0;
  double r_s = 1.0;
};

/// Omega_{d-1} / Omega_d = Gamma((d+1)/2) / (sqrt(pi) Gamma(d/2)), via
/// log-gamma. Throws DomainError for d <= 0.
double solid_angle_ratio(double d);

/// Average correlation integral of the uniformly sampled d-sphere as a
/// function of the adimensional radius rbar = r / r_s.
///
/// With cos(theta) = 1 - rbar^2/2 and x = sin^2(theta), the value is
/// I_x(d/2, 1/2) / 2 on the near hemisphere (rbar <= sqrt 2) and
/// 1 - I_x(d/2, 1/2) / 2 beyond it. This is the closed form of the
/// spherical-cap integral and, unlike the hypergeometric series, is valid
/// for every real d > 0. rbar >= 2 maps to 1.
///
/// Holds the d-dependent constants so repeated evaluations at a fixed d
/// skip the log-gamma calls.
class FciShape {
 public:
  explicit FciShape(double d);

  double d() const noexcept { return d_; }
  double cdf(double rbar) const;
  /// d(cdf)/d(rbar): ratio * rbar^(d-1) * (1 - rbar^2/4)^((d-2)/2) on
  /// (0, 2), zero outside.
  double density(double rbar) const;

 private:
  double d_;
  double a_;
  double log_beta_;
  double log_ratio_;
};

double fci_cdf(double rbar, double d);
double fci_density(double rbar, double d);

/// fci_cdf(r / r_s, d); distances past the sphere diameter give 1.
double fci_model_value(double r, const FciParams& params);

struct FciParamGradient {
  double wrt_d;
  double wrt_r_s;
};

/// Central finite differences with step 1e-5 * max(1, |param|).
FciParamGradient fci_param_gradient(double r, const FciParams& params);

}  // namespace dimscope
