#include "bssize/app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>

#include "bssize/error.hpp"
#include "json.hpp"

#ifndef BSSIZE_VERSION
#define BSSIZE_VERSION "0.0.0"
#endif

namespace bssize {

using nlohmann::json;

std::string_view tool_version() { return BSSIZE_VERSION; }

std::uint64_t replicate_seed(std::uint64_t master, int index) {
  // Coordinate tags keep these streams apart from the (n, replicate) keys.
  return derive_seed(master, {0x52455045ULL, static_cast<std::uint64_t>(index)});
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json config_to_json(const RunConfig& rc) {
  const ExperimentConfig& e = rc.experiment;
  json loss = {{"kind", std::string(e.loss.name())}};
  if (e.loss.kind() == LossKind::IntervalQuantile) loss["rho"] = e.loss.rho();
  if (e.loss.kind() == LossKind::IntervalCentered) loss["gamma"] = e.loss.gamma();
  return {
      {"prior",
       {{"a1", e.prior.beta.a()},
        {"b1", e.prior.beta.b()},
        {"a2", e.prior.alpha2.a()},
        {"b2", e.prior.alpha2.b()}}},
      {"loss", loss},
      {"run",
       {{"cost", e.unit_cost},
        {"grid", e.grid},
        {"K", e.outer_reps},
        {"estimates_per_n", e.estimates_per_n},
        {"replicates", rc.replicates},
        {"seed", e.seed}}},
      {"mcmc",
       {{"burn_in", e.mcmc.burn_in},
        {"thin", e.mcmc.thin},
        {"keep", e.mcmc.keep},
        {"initial_step", e.mcmc.initial_step},
        {"adapt", e.mcmc.adapt_during_burn_in},
        {"accept_low", e.mcmc.target_acceptance_low},
        {"accept_high", e.mcmc.target_acceptance_high}}},
  };
}

RunConfig config_from_json(const json& j) {
  RunConfig rc;
  ExperimentConfig& e = rc.experiment;
  const json& prior = j.at("prior");
  e.prior = PriorSpec{InvGammaParams(prior.at("a1").get<double>(), prior.at("b1").get<double>()),
                      InvGammaParams(prior.at("a2").get<double>(), prior.at("b2").get<double>())};
  const json& loss = j.at("loss");
  switch (parse_loss_kind(loss.at("kind").get<std::string>())) {
    case LossKind::Absolute: e.loss = LossSpec::absolute(); break;
    case LossKind::Quadratic: e.loss = LossSpec::quadratic(); break;
    case LossKind::IntervalQuantile:
      e.loss = LossSpec::interval_quantile(loss.at("rho").get<double>());
      break;
    case LossKind::IntervalCentered:
      e.loss = LossSpec::interval_centered(loss.at("gamma").get<double>());
      break;
  }
  const json& run = j.at("run");
  e.unit_cost = run.at("cost").get<double>();
  e.grid = run.at("grid").get<std::vector<int>>();
  e.outer_reps = run.at("K").get<int>();
  e.estimates_per_n = run.at("estimates_per_n").get<int>();
  rc.replicates = run.at("replicates").get<int>();
  e.seed = run.at("seed").get<std::uint64_t>();
  const json& mc = j.at("mcmc");
  e.mcmc.burn_in = mc.at("burn_in").get<int>();
  e.mcmc.thin = mc.at("thin").get<int>();
  e.mcmc.keep = mc.at("keep").get<int>();
  e.mcmc.initial_step = mc.at("initial_step").get<double>();
  e.mcmc.adapt_during_burn_in = mc.at("adapt").get<bool>();
  e.mcmc.target_acceptance_low = mc.at("accept_low").get<double>();
  e.mcmc.target_acceptance_high = mc.at("accept_high").get<double>();
  e.validate();
  return rc;
}

// NaN has no JSON spelling; it is written as null.
json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double number_from(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

json result_to_json(const SSDResult& r) {
  return {
      {"outcome", r.worthwhile() ? "optimal" : "not_worthwhile"},
      {"optimal_n", r.optimal_n ? json(*r.optimal_n) : json(nullptr)},
      {"raw_value", number_or_null(r.raw_value)},
      {"curve",
       {{"E_hat", r.curve.e_hat},
        {"G_hat", r.curve.g_hat},
        {"c", r.curve.c},
        {"points_used", r.curve.points_used},
        {"points_dropped", r.curve.points_dropped},
        {"r_squared", r.curve.r_squared}}},
  };
}

SSDResult result_from_json(const json& j) {
  SSDResult r;
  if (j.at("outcome").get<std::string>() == "optimal") r.optimal_n = j.at("optimal_n").get<int>();
  r.raw_value = number_from(j.at("raw_value"));
  const json& c = j.at("curve");
  r.curve.e_hat = c.at("E_hat").get<double>();
  r.curve.g_hat = c.at("G_hat").get<double>();
  r.curve.c = c.at("c").get<double>();
  r.curve.points_used = c.at("points_used").get<int>();
  r.curve.points_dropped = c.at("points_dropped").get<int>();
  r.curve.r_squared = c.at("r_squared").get<double>();
  return r;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunManifest run(const RunConfig& config, const RunOptions& options) {
  config.experiment.validate();
  if (config.replicates < 1) throw ValidationError("replicates must be >= 1");

  RunManifest manifest;
  manifest.config = config;
  manifest.tool_version = std::string(tool_version());
  manifest.started = utc_now();

  std::vector<SSDResult> results;
  for (int r = 1; r <= config.replicates; ++r) {
    ReplicateRun rep;
    rep.index = r;
    rep.seed = replicate_seed(config.experiment.seed, r);
    ExperimentConfig cfg = config.experiment;
    cfg.seed = rep.seed;

    GridOptions grid_options;
    grid_options.threads = options.threads;
    if (options.on_event) {
      grid_options.on_event = [&, r](const GridEvent& ev) { options.on_event(RunEvent{r, ev}); };
    }
    try {
      rep.points = run_grid(cfg, grid_options);
      rep.result = optimal_n(fit_cost_curve(rep.points, cfg.unit_cost));
    } catch (const SimulationError& e) {
      throw SimulationError("replicate " + std::to_string(r) + ": " + e.what());
    }
    if (rep.result.curve.points_dropped > 0 && options.on_event) {
      GridEvent warn{GridEvent::Kind::Warning, 0, 0, 0,
                     std::to_string(rep.result.curve.points_dropped) +
                         " point(s) with total cost <= c*n dropped from the curve fit"};
      options.on_event(RunEvent{r, warn});
    }
    results.push_back(rep.result);
    manifest.replicates.push_back(std::move(rep));
  }
  manifest.consensus = consensus(results);
  manifest.finished = utc_now();
  return manifest;
}

std::string manifest_to_json(const RunManifest& m) {
  json reps = json::array();
  for (const auto& rep : m.replicates) {
    json points = json::array();
    for (const auto& p : rep.points) {
      points.push_back({{"n", p.n},
                        {"replicate", p.replicate},
                        {"risk_estimate", p.risk_estimate},
                        {"total_cost", p.total_cost},
                        {"effective_K", p.effective_reps}});
    }
    reps.push_back({{"index", rep.index},
                    {"seed", rep.seed},
                    {"points", points},
                    {"result", result_to_json(rep.result)}});
  }
  const json doc = {
      {"tool", "bssize"},
      {"tool_version", m.tool_version},
      {"started", m.started},
      {"finished", m.finished},
      {"config", config_to_json(m.config)},
      {"replicates", reps},
      {"consensus", result_to_json(m.consensus)},
  };
  return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("result.json: ") + e.what());
  }
  try {
    RunManifest m;
    m.tool_version = doc.at("tool_version").get<std::string>();
    m.started = doc.at("started").get<std::string>();
    m.finished = doc.at("finished").get<std::string>();
    m.config = config_from_json(doc.at("config"));
    for (const json& rj : doc.at("replicates")) {
      ReplicateRun rep;
      rep.index = rj.at("index").get<int>();
      rep.seed = rj.at("seed").get<std::uint64_t>();
      for (const json& pj : rj.at("points")) {
        rep.points.push_back(RiskPoint{pj.at("n").get<int>(), pj.at("replicate").get<int>(),
                                       pj.at("risk_estimate").get<double>(),
                                       pj.at("total_cost").get<double>(),
                                       pj.at("effective_K").get<int>()});
      }
      rep.result = result_from_json(rj.at("result"));
      m.replicates.push_back(std::move(rep));
    }
    m.consensus = result_from_json(doc.at("consensus"));
    return m;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("result.json: ") + e.what());
  }
}

std::string points_csv(const RunManifest& m) {
  std::string out = "replicate,n,risk_estimate,total_cost\n";
  for (const auto& rep : m.replicates) {
    for (const auto& p : rep.points) {
      out += std::to_string(rep.index) + "," + std::to_string(p.n) + "," +
             format_double(p.risk_estimate) + "," + format_double(p.total_cost) + "\n";
    }
  }
  return out;
}

}  // namespace bssize
