#include "bssize/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bssize/error.hpp"

namespace bssize {

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
  for (double x : values_) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ValidationError("dataset values must be positive and finite");
    }
    sum_ += x;
    sum_reciprocal_ += 1.0 / x;
    sum_log_ += std::log(x);
  }
}

double Dataset::median() const {
  if (values_.empty()) throw ValidationError("median of an empty dataset");
  std::vector<double> sorted(values_);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  return n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double Dataset::deviance(double beta) const {
  const double n = static_cast<double>(values_.size());
  // Clamp: the closed form can dip a few ulps below zero when all x == beta.
  return std::max(0.0, sum_ / beta + beta * sum_reciprocal_ - 2.0 * n);
}

void MCMCConfig::validate() const {
  if (burn_in < 0) throw ValidationError("mcmc.burn_in must be >= 0");
  if (thin < 1) throw ValidationError("mcmc.thin must be >= 1");
  if (keep < 2) throw ValidationError("mcmc.keep must be >= 2");
  if (!(initial_step > 0.0) || !std::isfinite(initial_step)) {
    throw ValidationError("mcmc.initial_step must be positive");
  }
  if (!(target_acceptance_low > 0.0 && target_acceptance_low < target_acceptance_high &&
        target_acceptance_high < 1.0)) {
    throw ValidationError("mcmc target acceptance band must satisfy 0 < low < high < 1");
  }
}

double log_beta_posterior(double beta, const Dataset& data, const PriorSpec& prior) {
  if (!(beta > 0.0)) throw std::domain_error("log_beta_posterior: beta must be positive");
  const double n = static_cast<double>(data.size());
  const double a1 = prior.beta.a();
  const double b1 = prior.beta.b();
  const double a2 = prior.alpha2.a();
  const double b2 = prior.alpha2.b();
  const double log_beta = std::log(beta);

  // sum log[(beta/x)^{1/2} + (beta/x)^{3/2}] = sum [log(beta/x)/2 + log1p(beta/x)]
  double log1p_sum = 0.0;
  for (double x : data.values()) log1p_sum += std::log1p(beta / x);
  const double jacobian_terms = 0.5 * (n * log_beta - data.sum_log()) + log1p_sum;

  return -(n + a1 + 1.0) * log_beta - b1 / beta + jacobian_terms -
         (0.5 * (n + 1.0) + a2) * std::log(0.5 * data.deviance(beta) + b2);
}

InvGammaParams alpha2_conditional(double beta, const Dataset& data, const PriorSpec& prior) {
  const double n = static_cast<double>(data.size());
  return InvGammaParams(0.5 * (n + 1.0) + prior.alpha2.a(),
                        0.5 * data.deviance(beta) + prior.alpha2.b());
}

double sample_alpha2_given_beta(double beta, const Dataset& data, const PriorSpec& prior,
                                Rng& rng) {
  if (data.empty()) throw ValidationError("sample_alpha2_given_beta requires n >= 1");
  return invgamma_sample(alpha2_conditional(beta, data, prior), rng);
}

double lag1_autocorrelation(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - mean;
    den += d * d;
    if (i + 1 < n) num += d * (xs[i + 1] - mean);
  }
  if (den == 0.0) return 0.0;
  return std::clamp(num / den, -1.0, 1.0);
}

PosteriorDraws sample_joint(const Dataset& data, const PriorSpec& prior, const MCMCConfig& cfg,
                            Rng& rng) {
  if (data.empty()) throw ValidationError("sample_joint requires at least one observation");
  cfg.validate();

  // Target on u = log(beta), including the Jacobian d(beta)/du = beta.
  auto log_target = [&](double u) {
    const double beta = std::exp(u);
    // Proposals that leave the representable range are simply rejected.
    if (!(beta > 0.0) || !std::isfinite(beta)) return -std::numeric_limits<double>::infinity();
    return log_beta_posterior(beta, data, prior) + u;
  };

  double u = std::log(data.median());
  double current = log_target(u);
  if (!std::isfinite(current)) {
    throw SimulationError("posterior kernel is not finite at the chain start");
  }
  double step = cfg.initial_step;

  auto mh_step = [&]() -> bool {
    const double proposal = u + step * rng.normal();
    const double candidate = log_target(proposal);
    const double log_ratio = candidate - current;
    if (std::isfinite(candidate) && (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio)) {
      u = proposal;
      current = candidate;
      return true;
    }
    return false;
  };

  constexpr int kBatch = 50;
  int batch_accepted = 0;
  for (int i = 1; i <= cfg.burn_in; ++i) {
    if (mh_step()) ++batch_accepted;
    if (cfg.adapt_during_burn_in && i % kBatch == 0) {
      const double rate = static_cast<double>(batch_accepted) / kBatch;
      if (rate < cfg.target_acceptance_low) {
        step /= 1.1;
      } else if (rate > cfg.target_acceptance_high) {
        step *= 1.1;
      }
      batch_accepted = 0;
    }
  }

  PosteriorDraws out;
  const auto keep = static_cast<std::size_t>(cfg.keep);
  out.beta.reserve(keep);
  out.alpha2.reserve(keep);
  out.theta.reserve(keep);

  long accepted = 0;
  const long iterations = static_cast<long>(cfg.thin) * cfg.keep;
  for (long i = 1; i <= iterations; ++i) {
    if (mh_step()) ++accepted;
    if (i % cfg.thin == 0) {
      const double beta = std::exp(u);
      const double alpha2 = sample_alpha2_given_beta(beta, data, prior, rng);
      const double theta = beta * (1.0 + alpha2 / 2.0);
      if (!std::isfinite(beta) || !std::isfinite(alpha2) || !std::isfinite(theta) ||
          !(beta > 0.0) || !(alpha2 > 0.0)) {
        throw SimulationError("non-finite posterior draw");
      }
      out.beta.push_back(beta);
      out.alpha2.push_back(alpha2);
      out.theta.push_back(theta);
    }
  }

  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(iterations);
  if (accepted == 0 || accepted == iterations) {
    throw SimulationError("degenerate Metropolis-Hastings chain (acceptance rate " +
                          std::to_string(out.acceptance_rate) + ")");
  }
  out.lag1_autocorrelation_beta = lag1_autocorrelation(out.beta);
  out.final_step = step;
  return out;
}

}  // namespace bssize
