#include "bssize/bs_model.hpp"

#include <cmath>
#include <string>

#include "bssize/error.hpp"

namespace bssize {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be a positive finite number, got " +
                          std::to_string(v));
  }
}

}  // namespace

BSParams::BSParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  require_positive(alpha, "BS shape alpha");
  require_positive(beta, "BS scale beta");
}

InvGammaParams::InvGammaParams(double a, double b) : a_(a), b_(b) {
  require_positive(a, "inverse-gamma shape a");
  require_positive(b, "inverse-gamma scale b");
}

double bs_log_pdf(double x, const BSParams& p) {
  if (!(x > 0.0)) throw std::domain_error("bs_log_pdf: x must be positive");
  const double a = p.alpha();
  const double b = p.beta();
  const double ratio = x / b;
  const double quad = ratio + 1.0 / ratio - 2.0;
  constexpr double half_log_2pi = 0.91893853320467274178;
  return -half_log_2pi - quad / (2.0 * a * a) + std::log(x + b) - std::log(2.0 * a) -
         0.5 * std::log(b) - 1.5 * std::log(x);
}

double bs_from_normal(const BSParams& p, double z) {
  const double az = p.alpha() * z;
  const double root = std::sqrt(az * az + 4.0);
  // For large negative az the direct sum cancels; use the conjugate form.
  const double w = az >= 0.0 ? az + root : 4.0 / (root - az);
  return 0.25 * p.beta() * w * w;
}

double bs_sample(const BSParams& p, Rng& rng) { return bs_from_normal(p, rng.normal()); }

double bs_mean(const BSParams& p) { return p.beta() * (1.0 + 0.5 * p.alpha() * p.alpha()); }

double bs_variance(const BSParams& p) {
  const double ab = p.alpha() * p.beta();
  return ab * ab * (1.0 + 1.25 * p.alpha() * p.alpha());
}

double invgamma_sample(const InvGammaParams& p, Rng& rng) {
  return p.b() / rng.gamma(p.a());
}

double invgamma_log_pdf(double x, const InvGammaParams& p) {
  if (!(x > 0.0)) throw std::domain_error("invgamma_log_pdf: x must be positive");
  return p.a() * std::log(p.b()) - std::lgamma(p.a()) - (p.a() + 1.0) * std::log(x) - p.b() / x;
}

}  // namespace bssize
