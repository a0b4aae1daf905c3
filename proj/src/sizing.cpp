#include "bssize/sizing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bssize/error.hpp"

namespace bssize {

FittedCurve fit_cost_curve(std::span<const RiskPoint> points, double c) {
  if (!(c > 0.0)) throw ValidationError("unit cost must be positive");
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  FittedCurve curve;
  curve.c = c;
  for (const RiskPoint& p : points) {
    const double excess = p.total_cost - c * p.n;
    if (!(excess > 0.0) || !std::isfinite(excess)) {
      ++curve.points_dropped;
      continue;
    }
    xs.push_back(-std::log1p(static_cast<double>(p.n)));
    ys.push_back(std::log(excess));
  }
  curve.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    throw SimulationError("curve fit needs at least 2 points with total cost above c*n");
  }

  const double m = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= m;
  mean_y /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw SimulationError("curve fit is singular: all usable points share one n");

  curve.g_hat = sxy / sxx;
  curve.e_hat = std::exp(mean_y - curve.g_hat * mean_x);
  curve.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return curve;
}

SSDResult optimal_n(const FittedCurve& curve) {
  SSDResult out;
  out.curve = curve;
  if (!(curve.g_hat > 0.0)) {
    out.raw_value = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double g = curve.g_hat;
  out.raw_value = std::pow(curve.e_hat * g / curve.c, 1.0 / (g + 1.0)) - 1.0;
  if (out.raw_value >= 0.5) {
    const double rounded = std::floor(out.raw_value + 0.5);
    if (rounded > static_cast<double>(std::numeric_limits<int>::max())) {
      throw SimulationError("optimal sample size overflows");
    }
    out.optimal_n = std::max(1, static_cast<int>(rounded));
  }
  return out;
}

SSDResult consensus(std::span<const SSDResult> results) {
  if (results.empty()) throw ValidationError("consensus of an empty set");
  std::vector<const SSDResult*> worthwhile;
  for (const auto& r : results) {
    if (r.worthwhile()) worthwhile.push_back(&r);
  }
  const std::size_t not_worthwhile = results.size() - worthwhile.size();
  if (2 * not_worthwhile > results.size() || worthwhile.empty()) {
    for (const auto& r : results) {
      if (!r.worthwhile()) return r;
    }
  }
  std::stable_sort(worthwhile.begin(), worthwhile.end(),
                   [](const SSDResult* a, const SSDResult* b) { return *a->optimal_n < *b->optimal_n; });
  return *worthwhile[(worthwhile.size() - 1) / 2];
}

}  // namespace bssize
