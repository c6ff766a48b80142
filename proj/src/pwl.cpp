#include "assort/pwl.hpp"

#include <algorithm>
#include <cmath>

namespace assort {

namespace {
constexpr double kDedupTol = 1e-12;
}

PiecewiseUpperBound::PiecewiseUpperBound(double theta_min, double theta_max) {
  pts_.emplace_back(theta_min, std::exp(theta_min));
  if (theta_max - theta_min > kDedupTol) {
    pts_.emplace_back(theta_max, std::exp(theta_max));
  }
}

bool PiecewiseUpperBound::insert(double theta) {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), theta,
                             [](const auto& p, double t) { return p.first < t; });
  if (it != pts_.end() && std::fabs(it->first - theta) <= kDedupTol) return false;
  if (it != pts_.begin() && std::fabs(std::prev(it)->first - theta) <= kDedupTol) return false;
  if (theta < pts_.front().first || theta > pts_.back().first) return false;
  pts_.emplace(it, theta, std::exp(theta));
  return true;
}

double PiecewiseUpperBound::value(double theta) const {
  if (theta <= pts_.front().first) return pts_.front().second;
  if (theta >= pts_.back().first) return pts_.back().second;
  auto hi = std::lower_bound(pts_.begin(), pts_.end(), theta,
                             [](const auto& p, double t) { return p.first < t; });
  if (hi->first == theta) return hi->second;
  auto lo = std::prev(hi);
  const double t = (theta - lo->first) / (hi->first - lo->first);
  return lo->second + t * (hi->second - lo->second);
}

}  // namespace assort
