#pragma once

// Brute-force decision search with its own copy of the raw losses.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace oracle {

enum class Loss { L1, L2, L3, L4 };

inline double raw_point_loss(Loss kind, double theta, double d) {
  const double diff = theta - d;
  return kind == Loss::L1 ? std::abs(diff) : diff * diff;
}

inline double raw_interval_loss(Loss kind, double weight, double theta, double a, double b) {
  const double tau = 0.5 * (b - a);
  if (kind == Loss::L3) {
    return weight * tau + std::max(0.0, a - theta) + std::max(0.0, theta - b);
  }
  const double m = 0.5 * (a + b);
  return weight * tau + (theta - m) * (theta - m) / tau;
}

inline double mean_point_loss(Loss kind, std::span<const double> draws, double d) {
  double total = 0.0;
  for (double t : draws) total += raw_point_loss(kind, t, d);
  return total / static_cast<double>(draws.size());
}

inline double mean_interval_loss(Loss kind, double weight, std::span<const double> draws, double a,
                                 double b) {
  double total = 0.0;
  for (double t : draws) total += raw_interval_loss(kind, weight, t, a, b);
  return total / static_cast<double>(draws.size());
}

/// Smallest average loss found over a dense decision grid plus the draws
/// themselves as candidate endpoints.
inline double grid_search_best(Loss kind, double weight, std::span<const double> draws) {
  const auto [lo_it, hi_it] = std::minmax_element(draws.begin(), draws.end());
  const double span = std::max(*hi_it - *lo_it, 1.0);
  const double lo = *lo_it - 0.5 * span;
  const double hi = *hi_it + 0.5 * span;
  double best = std::numeric_limits<double>::infinity();
  if (kind == Loss::L1 || kind == Loss::L2) {
    for (int i = 0; i <= 20000; ++i) {
      best = std::min(best, mean_point_loss(kind, draws, lo + (hi - lo) * i / 20000.0));
    }
    for (double t : draws) best = std::min(best, mean_point_loss(kind, draws, t));
    return best;
  }
  if (kind == Loss::L3) {
    constexpr int kSteps = 300;
    for (int i = 0; i <= kSteps; ++i) {
      for (int j = i; j <= kSteps; ++j) {
        best = std::min(best, mean_interval_loss(kind, weight, draws, lo + (hi - lo) * i / kSteps,
                                                 lo + (hi - lo) * j / kSteps));
      }
    }
    for (double a : draws) {
      for (double b : draws) {
        if (a <= b) best = std::min(best, mean_interval_loss(kind, weight, draws, a, b));
      }
    }
    return best;
  }
  constexpr int kSteps = 400;
  for (int i = 0; i <= kSteps; ++i) {
    const double m = lo + (hi - lo) * i / kSteps;
    for (int j = 1; j <= kSteps; ++j) {
      const double tau = 2.0 * span * j / kSteps;
      best = std::min(best, mean_interval_loss(kind, weight, draws, m - tau, m + tau));
    }
  }
  return best;
}

}  // namespace oracle
