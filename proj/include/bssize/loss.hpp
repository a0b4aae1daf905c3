#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bssize {

enum class LossKind {
  Absolute,          // L1: |theta - d|
  Quadratic,         // L2: (theta - d)^2
  IntervalQuantile,  // L3: rho*tau + (a - theta)^+ + (theta - b)^+
  IntervalCentered,  // L4: gamma*tau + (theta - m)^2 / tau
};

class LossSpec {
 public:
  static LossSpec absolute() { return LossSpec(LossKind::Absolute, 0.0); }
  static LossSpec quadratic() { return LossSpec(LossKind::Quadratic, 0.0); }
  /// Requires 0 < rho < 1.
  static LossSpec interval_quantile(double rho);
  /// Requires gamma > 0.
  static LossSpec interval_centered(double gamma);

  LossKind kind() const { return kind_; }
  bool is_interval() const {
    return kind_ == LossKind::IntervalQuantile || kind_ == LossKind::IntervalCentered;
  }
  double rho() const;
  double gamma() const;

  /// "L1" .. "L4"
  std::string_view name() const;

  friend bool operator==(const LossSpec&, const LossSpec&) = default;

 private:
  LossSpec(LossKind kind, double weight) : kind_(kind), weight_(weight) {}

  LossKind kind_;
  double weight_;  // rho for L3, gamma for L4
};

LossKind parse_loss_kind(std::string_view name);

struct Interval {
  double lower;
  double upper;
};

/// Point estimate (L1, L2) or credible interval (L3, L4).
using Decision = std::variant<double, Interval>;

/// Divisor used for the sample variance behind L2 and L4. Unbiased (N-1) is
/// the library convention; Population (N) makes the L4 rule exactly optimal
/// for the empirical distribution of the draws.
enum class VarianceDivisor { Unbiased, Population };

/// p-quantile of sorted draws: the ceil(pN)-th order statistic, no
/// interpolation, ceil(0) mapped to the first.
double empirical_quantile(std::span<const double> sorted, double p);

Decision bayes_rule(std::span<const double> theta_draws, const LossSpec& spec,
                    VarianceDivisor divisor = VarianceDivisor::Unbiased);

/// Posterior expected loss at the Bayes rule, estimated from the draws.
double expected_posterior_loss(std::span<const double> theta_draws, const LossSpec& spec,
                               VarianceDivisor divisor = VarianceDivisor::Unbiased);

double loss_value(double theta, const Decision& decision, const LossSpec& spec);

}  // namespace bssize
