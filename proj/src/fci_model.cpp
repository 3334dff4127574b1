#include "dimscope/fci_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dimscope/error.hpp"
#include "dimscope/special.hpp"

namespace dimscope {

namespace {

void check_dimension(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw DomainError("model dimension must be positive and finite");
  }
}

double log_solid_angle_ratio(double d) {
  return std::lgamma(0.5 * (d + 1.0)) - 0.5 * std::log(std::numbers::pi) -
         std::lgamma(0.5 * d);
}

}  // namespace

double solid_angle_ratio(double d) {
  check_dimension(d);
  return std::exp(log_solid_angle_ratio(d));
}

FciShape::FciShape(double d) : d_(d), a_(0.5 * d) {
  check_dimension(d);
  log_beta_ = log_beta(a_, 0.5);
  log_ratio_ = log_solid_angle_ratio(d);
}

double FciShape::cdf(double rbar) const {
  if (!(rbar >= 0.0)) throw DomainError("radius must be non-negative");
  if (rbar == 0.0) return 0.0;
  if (rbar >= 2.0) return 1.0;
  const double r2 = rbar * rbar;
  const double x = r2 * (1.0 - 0.25 * r2);  // sin^2(theta)
  const double c = 1.0 - 0.5 * r2;          // cos(theta)
  const double half = 0.5 * incomplete_beta(std::min(x, 1.0), c * c, a_, 0.5,
                                            log_beta_);
  return r2 <= 2.0 ? half : 1.0 - half;
}

double FciShape::density(double rbar) const {
  if (!(rbar > 0.0) || rbar >= 2.0) return 0.0;
  const double q = 1.0 - 0.25 * rbar * rbar;
  return std::exp(log_ratio_ + (d_ - 1.0) * std::log(rbar) +
                  0.5 * (d_ - 2.0) * std::log(q));
}

double fci_cdf(double rbar, double d) { return FciShape(d).cdf(rbar); }

double fci_density(double rbar, double d) {
  return FciShape(d).density(rbar);
}

double fci_model_value(double r, const FciParams& params) {
  if (!(params.r_s > 0.0)) throw DomainError("sphere radius must be positive");
  if (!(r >= 0.0)) throw DomainError("radius must be non-negative");
  return FciShape(params.d).cdf(r / params.r_s);
}

FciParamGradient fci_param_gradient(double r, const FciParams& params) {
  const double hd = 1e-5 * std::max(1.0, std::fabs(params.d));
  const double hr = 1e-5 * std::max(1.0, std::fabs(params.r_s));
  const double dd = (fci_model_value(r, {params.d + hd, params.r_s}) -
                     fci_model_value(r, {params.d - hd, params.r_s})) /
                    (2.0 * hd);
  const double dr = (fci_model_value(r, {params.d, params.r_s + hr}) -
                     fci_model_value(r, {params.d, params.r_s - hr})) /
                    (2.0 * hr);
  return {dd, dr};
}

}  // namespace dimscope
