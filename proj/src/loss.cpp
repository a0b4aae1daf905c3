#include "bssize/loss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bssize/error.hpp"

namespace bssize {

namespace {

std::vector<double> checked_sorted(std::span<const double> draws) {
  if (draws.size() < 2) throw ValidationError("loss estimators need at least 2 draws");
  std::vector<double> sorted(draws.begin(), draws.end());
  for (double x : sorted) {
    if (!std::isfinite(x)) throw ValidationError("non-finite posterior draw");
  }
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double mean_of(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance_of(std::span<const double> xs, VarianceDivisor divisor) {
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double n = static_cast<double>(xs.size());
  return ss / (divisor == VarianceDivisor::Unbiased ? n - 1.0 : n);
}

double median_of_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double positive_part(double x) { return x > 0.0 ? x : 0.0; }

}  // namespace

LossSpec LossSpec::interval_quantile(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw ValidationError("rho must lie in (0, 1)");
  return LossSpec(LossKind::IntervalQuantile, rho);
}

LossSpec LossSpec::interval_centered(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("gamma must be positive");
  return LossSpec(LossKind::IntervalCentered, gamma);
}

double LossSpec::rho() const {
  if (kind_ != LossKind::IntervalQuantile) throw ValidationError("rho is only defined for L3");
  return weight_;
}

double LossSpec::gamma() const {
  if (kind_ != LossKind::IntervalCentered) throw ValidationError("gamma is only defined for L4");
  return weight_;
}

std::string_view LossSpec::name() const {
  switch (kind_) {
    case LossKind::Absolute: return "L1";
    case LossKind::Quadratic: return "L2";
    case LossKind::IntervalQuantile: return "L3";
    case LossKind::IntervalCentered: return "L4";
  }
  return "?";
}

LossKind parse_loss_kind(std::string_view name) {
  if (name == "L1") return LossKind::Absolute;
  if (name == "L2") return LossKind::Quadratic;
  if (name == "L3") return LossKind::IntervalQuantile;
  if (name == "L4") return LossKind::IntervalCentered;
  throw ValidationError("unknown loss '" + std::string(name) + "' (expected L1, L2, L3 or L4)");
}

double empirical_quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ValidationError("quantile of an empty sample");
  const double n = static_cast<double>(sorted.size());
  // The small offset keeps exact products such as 0.95 * 100 from being
  // pushed to the next order statistic by binary rounding.
  const double rank = std::ceil(p * n - 1e-9);
  const auto k = static_cast<std::size_t>(std::clamp(rank, 1.0, n));
  return sorted[k - 1];
}

Decision bayes_rule(std::span<const double> theta_draws, const LossSpec& spec,
                    VarianceDivisor divisor) {
  const std::vector<double> sorted = checked_sorted(theta_draws);
  switch (spec.kind()) {
    case LossKind::Absolute:
      return median_of_sorted(sorted);
    case LossKind::Quadratic:
      return mean_of(sorted);
    case LossKind::IntervalQuantile: {
      const double half = spec.rho() / 2.0;
      return Interval{empirical_quantile(sorted, half), empirical_quantile(sorted, 1.0 - half)};
    }
    case LossKind::IntervalCentered: {
      const double m = mean_of(sorted);
      const double sd = std::sqrt(variance_of(sorted, divisor) / spec.gamma());
      return Interval{m - sd, m + sd};
    }
  }
  throw ValidationError("unknown loss kind");
}

double expected_posterior_loss(std::span<const double> theta_draws, const LossSpec& spec,
                               VarianceDivisor divisor) {
  const std::vector<double> sorted = checked_sorted(theta_draws);
  const double n = static_cast<double>(sorted.size());
  switch (spec.kind()) {
    case LossKind::Absolute: {
      const double med = median_of_sorted(sorted);
      double total = 0.0;
      for (double t : sorted) total += std::abs(t - med);
      return total / n;
    }
    case LossKind::Quadratic:
      return variance_of(sorted, divisor);
    case LossKind::IntervalQuantile: {
      const double half = spec.rho() / 2.0;
      const double lower = empirical_quantile(sorted, half);
      const double upper = empirical_quantile(sorted, 1.0 - half);
      // Closed sets: theta >= upper and theta <= lower both count. Heavy ties
      // at the lower endpoint can push the sum below zero; the expected loss
      // it estimates cannot be negative.
      double total = 0.0;
      for (double t : sorted) {
        if (t >= upper) total += t;
        if (t <= lower) total -= t;
      }
      return std::max(0.0, total / n);
    }
    case LossKind::IntervalCentered:
      return 2.0 * std::sqrt(spec.gamma()) * std::sqrt(variance_of(sorted, divisor));
  }
  throw ValidationError("unknown loss kind");
}

double loss_value(double theta, const Decision& decision, const LossSpec& spec) {
  if (spec.is_interval()) {
    const auto* interval = std::get_if<Interval>(&decision);
    if (interval == nullptr) throw ValidationError("interval loss needs an interval decision");
    if (interval->lower > interval->upper) throw ValidationError("interval with lower > upper");
    const double tau = 0.5 * (interval->upper - interval->lower);
    if (spec.kind() == LossKind::IntervalQuantile) {
      return spec.rho() * tau + positive_part(interval->lower - theta) +
             positive_part(theta - interval->upper);
    }
    const double center = 0.5 * (interval->lower + interval->upper);
    if (tau == 0.0) {
      if (theta == center) return 0.0;
      throw ValidationError("degenerate interval: L4 loss is unbounded off-center");
    }
    return spec.gamma() * tau + (theta - center) * (theta - center) / tau;
  }
  const auto* point = std::get_if<double>(&decision);
  if (point == nullptr) throw ValidationError("point loss needs a point decision");
  const double diff = theta - *point;
  return spec.kind() == LossKind::Absolute ? std::abs(diff) : diff * diff;
}

}  // namespace bssize
