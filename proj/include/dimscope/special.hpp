#pragma once

namespace dimscope {

/// log B(a, b) for a, b > 0.
double log_beta(double a, double b);

/// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
/// `one_minus_x` is passed separately so callers that know 1-x exactly avoid
/// the cancellation. `log_beta_ab` is log B(a, b).
double incomplete_beta(double x, double one_minus_x, double a, double b,
                       double log_beta_ab);

/// Convenience overload computing 1-x and log B(a, b) itself.
double incomplete_beta(double x, double a, double b);

}  // namespace dimscope
