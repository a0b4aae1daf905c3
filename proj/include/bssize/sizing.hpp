#pragma once

#include <cmath>
#include <optional>
#include <span>

#include "bssize/risk.hpp"

namespace bssize {

/// tc(n) = E / (1+n)^G + c n, fitted through log(tc(n) - c n) = log E - G log(1+n).
struct FittedCurve {
  double e_hat = 0.0;
  double g_hat = 0.0;
  double c = 0.0;
  int points_used = 0;
  int points_dropped = 0;
  double r_squared = 0.0;

  double evaluate(double n) const { return e_hat / std::pow(1.0 + n, g_hat) + c * n; }

  friend bool operator==(const FittedCurve&, const FittedCurve&) = default;
};

struct SSDResult {
  std::optional<int> optimal_n;  // empty: not worth sampling
  FittedCurve curve;
  double raw_value = 0.0;  // (E G / c)^(1/(G+1)) - 1, NaN when G <= 0

  bool worthwhile() const { return optimal_n.has_value(); }
};

/// Points with total_cost - c n <= 0 are skipped and counted as dropped.
/// Throws SimulationError with fewer than two usable points or a single
/// distinct n among them.
FittedCurve fit_cost_curve(std::span<const RiskPoint> points, double c);

SSDResult optimal_n(const FittedCurve& curve);

/// Strict majority of not-worthwhile results wins; otherwise the member
/// holding the lower median of the reported sample sizes.
SSDResult consensus(std::span<const SSDResult> results);

}  // namespace bssize
