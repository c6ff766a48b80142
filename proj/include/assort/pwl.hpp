#pragma once

#include <utility>
#include <vector>

namespace assort {

/// Secant over-approximation of exp(theta) on [theta_min, 0], refined by
/// inserting breakpoints that lie on the curve. Piecewise-linear
/// interpolation between consecutive breakpoints; always >= exp(theta) on
/// the covered interval, and every refinement lowers it pointwise.
class PiecewiseUpperBound {
 public:
  PiecewiseUpperBound(double theta_min, double theta_max);

  /// Adds (theta, exp(theta)). Returns false when theta duplicates an
  /// existing abscissa within 1e-12 (no zero-width segments).
  bool insert(double theta);

  /// h_T(theta); exact at breakpoints, clamped to the covered interval.
  double value(double theta) const;

  const std::vector<std::pair<double, double>>& breakpoints() const { return pts_; }

 private:
  std::vector<std::pair<double, double>> pts_;  // strictly increasing abscissas
};

}  // namespace assort
