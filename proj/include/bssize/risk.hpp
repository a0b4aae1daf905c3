#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bssize/bs_model.hpp"
#include "bssize/loss.hpp"
#include "bssize/posterior.hpp"

namespace bssize {

struct ExperimentConfig {
  PriorSpec prior{InvGammaParams(8.0, 50.0), InvGammaParams(8.0, 50.0)};
  LossSpec loss = LossSpec::absolute();
  double unit_cost = 0.001;
  std::vector<int> grid{2, 12, 22, 32, 42, 52, 62, 72, 82, 92};
  int outer_reps = 100;  // K
  MCMCConfig mcmc;
  int estimates_per_n = 10;
  std::uint64_t seed = 1;

  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct RiskPoint {
  int n = 0;
  int replicate = 0;  // 0-based estimate index at this n
  double risk_estimate = 0.0;
  double total_cost = 0.0;  // risk_estimate + c n
  int effective_reps = 0;   // outer replicates that survived

  friend bool operator==(const RiskPoint&, const RiskPoint&) = default;
};

struct RiskEstimate {
  double mean = 0.0;
  int effective_reps = 0;
  int dropped = 0;
  std::vector<std::string> warnings;
};

/// Mean posterior expected loss at the Bayes rule over outer_reps draws
/// from the prior predictive.
/// Outer replicate k uses the substream derive_seed(stream_seed, {k, attempt});
/// a failed chain is retried once on attempt 1, then dropped.
RiskEstimate estimate_bayes_risk(int n, const ExperimentConfig& cfg, std::uint64_t stream_seed);

/// Substream key for the estimate (n, replicate) under a master seed.
std::uint64_t risk_point_seed(std::uint64_t master, int n, int replicate);

struct GridEvent {
  enum class Kind { PointStarted, PointFinished, Warning };
  Kind kind = Kind::PointStarted;
  int n = 0;
  int replicate = 0;
  int effective_reps = 0;
  std::string message;
};

using GridEventSink = std::function<void(const GridEvent&)>;

struct GridOptions {
  unsigned threads = 1;
  GridEventSink on_event;  // calls are serialized
};

/// Every (n, replicate) pair in grid x [0, estimates_per_n). Output is in
/// grid order, then replicate order, and is independent of thread count.
std::vector<RiskPoint> run_grid(const ExperimentConfig& cfg, const GridOptions& options = {});

}  // namespace bssize
