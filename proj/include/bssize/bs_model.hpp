#pragma once

#include "bssize/random.hpp"

namespace bssize {

/// Shape alpha and scale beta of a Birnbaum-Saunders distribution.
/// beta is also the median.
class BSParams {
 public:
  BSParams(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

 private:
  double alpha_;
  double beta_;
};

/// Inverse gamma with density proportional to x^-(a+1) exp(-b/x).
class InvGammaParams {
 public:
  InvGammaParams(double a, double b);

  double a() const { return a_; }
  double b() const { return b_; }

  friend bool operator==(const InvGammaParams&, const InvGammaParams&) = default;

 private:
  double a_;
  double b_;
};

/// Inverse-gamma priors: beta ~ IG(a1, b1), alpha^2 ~ IG(a2, b2).
struct PriorSpec {
  InvGammaParams beta;
  InvGammaParams alpha2;

  friend bool operator==(const PriorSpec&, const PriorSpec&) = default;
};

double bs_log_pdf(double x, const BSParams& p);

/// Stochastic representation X = (beta/4) (alpha z + sqrt((alpha z)^2 + 4))^2.
/// Strictly increasing in z.
double bs_from_normal(const BSParams& p, double z);

double bs_sample(const BSParams& p, Rng& rng);

/// theta = beta (1 + alpha^2 / 2)
double bs_mean(const BSParams& p);

double bs_variance(const BSParams& p);

double invgamma_sample(const InvGammaParams& p, Rng& rng);

/// Normalized log-density.
double invgamma_log_pdf(double x, const InvGammaParams& p);

}  // namespace bssize
