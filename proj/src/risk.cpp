#include "bssize/risk.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "bssize/error.hpp"

namespace bssize {

void ExperimentConfig::validate() const {
  if (grid.empty()) throw ValidationError("grid must not be empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) throw ValidationError("grid values must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw ValidationError("grid must be strictly increasing");
    }
  }
  if (outer_reps < 1) throw ValidationError("K must be >= 1");
  if (estimates_per_n < 1) throw ValidationError("estimates_per_n must be >= 1");
  if (!(unit_cost > 0.0) || !std::isfinite(unit_cost)) {
    throw ValidationError("cost must be positive");
  }
  mcmc.validate();
}

std::uint64_t risk_point_seed(std::uint64_t master, int n, int replicate) {
  return derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(replicate)});
}

namespace {

double one_outer_replicate(int n, const ExperimentConfig& cfg, Rng& rng) {
  const double alpha2 = invgamma_sample(cfg.prior.alpha2, rng);
  const double beta = invgamma_sample(cfg.prior.beta, rng);
  const BSParams truth(std::sqrt(alpha2), beta);

  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) x = bs_sample(truth, rng);
  const Dataset data(std::move(xs));

  const PosteriorDraws draws = sample_joint(data, cfg.prior, cfg.mcmc, rng);
  const double loss = expected_posterior_loss(draws.theta, cfg.loss);
  if (!std::isfinite(loss)) throw SimulationError("non-finite posterior expected loss");
  return loss;
}

}  // namespace

RiskEstimate estimate_bayes_risk(int n, const ExperimentConfig& cfg, std::uint64_t stream_seed) {
  if (n < 1) throw ValidationError("sample size n must be >= 1");
  RiskEstimate out;
  double total = 0.0;
  for (int k = 0; k < cfg.outer_reps; ++k) {
    std::optional<double> loss;
    for (std::uint64_t attempt = 0; attempt < 2 && !loss; ++attempt) {
      Rng rng(derive_seed(stream_seed, {static_cast<std::uint64_t>(k), attempt}));
      try {
        loss = one_outer_replicate(n, cfg, rng);
      } catch (const SimulationError& e) {
        out.warnings.push_back("n=" + std::to_string(n) + " outer replicate " + std::to_string(k) +
                               " attempt " + std::to_string(attempt) + ": " + e.what());
      }
    }
    if (loss) {
      total += *loss;
      ++out.effective_reps;
    } else {
      ++out.dropped;
    }
  }
  if (out.effective_reps == 0) {
    throw SimulationError("n=" + std::to_string(n) + ": every outer replicate failed");
  }
  out.mean = total / out.effective_reps;
  return out;
}

std::vector<RiskPoint> run_grid(const ExperimentConfig& cfg, const GridOptions& options) {
  cfg.validate();
  const std::size_t per_n = static_cast<std::size_t>(cfg.estimates_per_n);
  const std::size_t units = cfg.grid.size() * per_n;

  std::vector<std::optional<RiskPoint>> slots(units);
  std::vector<std::string> failures(units);
  std::mutex sink_mutex;
  auto emit = [&](const GridEvent& ev) {
    if (!options.on_event) return;
    std::lock_guard lock(sink_mutex);
    options.on_event(ev);
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < units; i = next++) {
      const int n = cfg.grid[i / per_n];
      const int rep = static_cast<int>(i % per_n);
      emit({GridEvent::Kind::PointStarted, n, rep, 0, {}});
      try {
        RiskEstimate est = estimate_bayes_risk(n, cfg, risk_point_seed(cfg.seed, n, rep));
        for (auto& w : est.warnings) emit({GridEvent::Kind::Warning, n, rep, 0, std::move(w)});
        slots[i] = RiskPoint{n, rep, est.mean, est.mean + cfg.unit_cost * n, est.effective_reps};
        emit({GridEvent::Kind::PointFinished, n, rep, est.effective_reps, {}});
      } catch (const SimulationError& e) {
        failures[i] = e.what();
        emit({GridEvent::Kind::Warning, n, rep, 0, e.what()});
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, units));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<RiskPoint> points;
  points.reserve(units);
  std::set<int> covered;
  for (const auto& slot : slots) {
    if (slot) {
      points.push_back(*slot);
      covered.insert(slot->n);
    }
  }
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    if (!covered.contains(cfg.grid[g])) {
      throw SimulationError("grid point n=" + std::to_string(cfg.grid[g]) +
                            " has no successful estimate: " + failures[g * per_n]);
    }
  }
  return points;
}

}  // namespace bssize
