#pragma once

#include <span>
#include <vector>

#include "bssize/bs_model.hpp"
#include "bssize/random.hpp"

namespace bssize {

/// Positive observations x_1..x_n with the sufficient sums the sampler
/// needs precomputed. An empty dataset is allowed so the posterior kernel
/// can be evaluated against the bare prior; the samplers reject it.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double sum() const { return sum_; }
  double sum_reciprocal() const { return sum_reciprocal_; }
  double sum_log() const { return sum_log_; }
  double median() const;

  /// sum_i (x_i/beta + beta/x_i - 2)
  double deviance(double beta) const;

 private:
  std::vector<double> values_;
  double sum_ = 0.0;
  double sum_reciprocal_ = 0.0;
  double sum_log_ = 0.0;
};

struct MCMCConfig {
  int burn_in = 500;
  int thin = 20;
  int keep = 500;
  double initial_step = 0.5;  // proposal sd on log(beta)
  bool adapt_during_burn_in = true;
  double target_acceptance_low = 0.4;
  double target_acceptance_high = 0.8;

  void validate() const;

  friend bool operator==(const MCMCConfig&, const MCMCConfig&) = default;
};

struct PosteriorDraws {
  std::vector<double> theta;
  std::vector<double> alpha2;
  std::vector<double> beta;
  double acceptance_rate = 0.0;
  double lag1_autocorrelation_beta = 0.0;
  double final_step = 0.0;
};

/// Unnormalized log pi(beta | x). The prior enters as exp(-b1/beta).
double log_beta_posterior(double beta, const Dataset& data, const PriorSpec& prior);

/// Parameters of the conditional inverse-gamma law of alpha^2 given beta:
/// shape (n+1)/2 + a2, scale deviance(beta)/2 + b2.
InvGammaParams alpha2_conditional(double beta, const Dataset& data, const PriorSpec& prior);

double sample_alpha2_given_beta(double beta, const Dataset& data, const PriorSpec& prior,
                                Rng& rng);

/// Metropolis-within-Gibbs: Gaussian random walk on log(beta), exact
/// inverse-gamma draw for alpha^2 at each kept beta, theta from the BS mean.
/// Throws SimulationError on a degenerate chain.
PosteriorDraws sample_joint(const Dataset& data, const PriorSpec& prior, const MCMCConfig& cfg,
                            Rng& rng);

double lag1_autocorrelation(std::span<const double> xs);

}  // namespace bssize
