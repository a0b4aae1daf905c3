#pragma once

// Test-only reference computations. Nothing here calls into the code paths
// it is used to check, except for the log-density being integrated.

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

inline double integrate_0_inf(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity());
}

inline double integrate(const std::function<double(double)>& f, double lo, double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 25, 1e-14);
}

/// Normalized 1-D density from an unnormalized log-density on (0, inf).
/// Integration happens in u = log x around the mode so the mass is resolved
/// regardless of scale.
class LogDensity1D {
 public:
  LogDensity1D(std::function<double(double)> log_kernel, double lo, double hi)
      : log_kernel_(std::move(log_kernel)) {
    // Crude mode search on a log grid, then a bracket of +-40 log units of density.
    double best_u = std::log(lo);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 4000; ++i) {
      const double u = std::log(lo) + (std::log(hi) - std::log(lo)) * i / 4000.0;
      const double v = log_kernel_(std::exp(u)) + u;
      if (v > best) {
        best = v;
        best_u = u;
      }
    }
    shift_ = best;
    u_lo_ = best_u;
    while (log_kernel_(std::exp(u_lo_)) + u_lo_ - shift_ > -60.0) u_lo_ -= 0.05;
    u_hi_ = best_u;
    while (log_kernel_(std::exp(u_hi_)) + u_hi_ - shift_ > -60.0) u_hi_ += 0.05;
    // Cumulative mass over fixed panels; cdf() adds the partial panel.
    width_ = (u_hi_ - u_lo_) / kPanels;
    cumulative_.assign(kPanels + 1, 0.0);
    for (int k = 0; k < kPanels; ++k) {
      const double a = u_lo_ + k * width_;
      cumulative_[k + 1] = cumulative_[k] + panel(a, a + width_);
    }
    total_ = cumulative_.back();
  }

  double cdf(double x) const {
    const double u = std::log(x);
    if (u <= u_lo_) return 0.0;
    if (u >= u_hi_) return 1.0;
    const int k = std::min(kPanels - 1, static_cast<int>((u - u_lo_) / width_));
    const double a = u_lo_ + k * width_;
    return (cumulative_[k] + panel(a, u)) / total_;
  }

  double quantile(double p) const {
    auto f = [&](double u) { return cdf(std::exp(u)) - p; };
    boost::uintmax_t iters = 200;
    const auto r = boost::math::tools::toms748_solve(
        f, u_lo_, u_hi_, boost::math::tools::eps_tolerance<double>(40), iters);
    return std::exp(0.5 * (r.first + r.second));
  }

 private:
  std::function<double(double)> density_u() const {
    return [this](double u) { return std::exp(log_kernel_(std::exp(u)) + u - shift_); };
  }

  double panel(double a, double b) const {
    return boost::math::quadrature::gauss<double, 20>::integrate(density_u(), a, b);
  }

  static constexpr int kPanels = 2000;
  std::function<double(double)> log_kernel_;
  std::vector<double> cumulative_;
  double width_ = 0.0;
  double shift_ = 0.0;
  double u_lo_ = 0.0;
  double u_hi_ = 0.0;
  double total_ = 1.0;
};

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

/// One-sample KS statistic against a continuous CDF.
inline double ks_one_sample(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

/// Asymptotic 1% critical value of the two-sample KS statistic.
inline double ks_critical_1pct(double n, double m) { return 1.628 * std::sqrt((n + m) / (n * m)); }

struct Moments {
  double mean = 0.0;
  double variance = 0.0;      // divisor N-1
  double se_mean = 0.0;
  double se_variance = 0.0;   // from the fourth central moment
};

inline Moments moments(std::span<const double> xs) {
  const double n = static_cast<double>(xs.size());
  Moments m;
  for (double x : xs) m.mean += x;
  m.mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = (x - m.mean) * (x - m.mean);
    m2 += d;
    m4 += d * d;
  }
  m.variance = m2 / (n - 1.0);
  m4 /= n;
  const double pop_var = m2 / n;
  m.se_mean = std::sqrt(m.variance / n);
  m.se_variance = std::sqrt(std::max(0.0, m4 - pop_var * pop_var) / n);
  return m;
}

}  // namespace oracle
