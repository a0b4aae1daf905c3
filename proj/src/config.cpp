#include "bssize/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

#include "bssize/error.hpp"

namespace bssize {

namespace {

struct KeyInfo {
  std::string_view key;
  std::string_view section;
};

constexpr std::array<KeyInfo, 20> kKeys{{
    {"a1", "prior"},          {"b1", "prior"},
    {"a2", "prior"},          {"b2", "prior"},
    {"loss", "loss"},         {"rho", "loss"},
    {"gamma", "loss"},        {"cost", "run"},
    {"grid", "run"},          {"K", "run"},
    {"estimates_per_n", "run"}, {"replicates", "run"},
    {"seed", "run"},          {"burn_in", "mcmc"},
    {"thin", "mcmc"},         {"keep", "mcmc"},
    {"initial_step", "mcmc"}, {"adapt", "mcmc"},
    {"accept_low", "mcmc"},   {"accept_high", "mcmc"},
}};

const KeyInfo* find_key(std::string_view key) {
  for (const auto& info : kKeys) {
    if (info.key == key) return &info;
  }
  return nullptr;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void invalid(std::string_view field, const std::string& why) {
  throw ValidationError(std::string(field) + ": " + why);
}

double to_double(std::string_view field, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    invalid(field, "expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

template <class Int>
Int to_int(std::string_view field, std::string_view text) {
  Int v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    invalid(field, "expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

bool to_bool(std::string_view field, std::string_view text) {
  if (text == "true" || text == "on" || text == "1") return true;
  if (text == "false" || text == "off" || text == "0") return false;
  invalid(field, "expected true or false, got '" + std::string(text) + "'");
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<int> parse_grid(std::string_view text) {
  text = trim(text);
  std::vector<int> grid;
  if (text.find(':') != std::string_view::npos) {
    std::array<int, 3> parts{};
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      const auto end = i < 2 ? text.find(':', pos) : text.size();
      if (end == std::string_view::npos) invalid("grid", "range must be start:stop:step");
      parts[i] = to_int<int>("grid", trim(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    if (pos <= text.size()) invalid("grid", "range must be start:stop:step");
    const auto [start, stop, step] = parts;
    if (step < 1) invalid("grid", "range step must be >= 1");
    if (start > stop) invalid("grid", "range start must not exceed stop");
    for (int n = start; n <= stop; n += step) grid.push_back(n);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      grid.push_back(to_int<int>("grid", trim(text.substr(pos, end - pos))));
      pos = end + 1;
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 1) invalid("grid", "sample sizes must be >= 1");
    if (i > 0 && grid[i] <= grid[i - 1]) invalid("grid", "must be strictly increasing");
  }
  return grid;
}

void ConfigBuilder::load_text(std::string_view text) {
  std::map<std::string, std::string, std::less<>> seen;
  std::string_view section;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') invalid(where, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "prior" && section != "loss" && section != "run" && section != "mcmc") {
        invalid(where, "unknown section [" + std::string(section) + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) invalid(where, "expected key = value");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const KeyInfo* info = find_key(key);
    if (info == nullptr) invalid(key, "unknown key");
    if (!section.empty() && info->section != section) {
      invalid(key, "belongs in [" + std::string(info->section) + "], found in [" +
                       std::string(section) + "]");
    }
    if (value.empty()) invalid(key, "missing value");
    if (!seen.emplace(std::string(key), std::string(value)).second) {
      invalid(key, "given more than once");
    }
  }
  for (auto& [k, v] : seen) values_[k] = std::move(v);
}

void ConfigBuilder::set(std::string_view key, std::string_view value) {
  if (find_key(key) == nullptr) invalid(key, "unknown key");
  value = trim(value);
  if (value.empty()) invalid(key, "missing value");
  values_[std::string(key)] = std::string(value);
}

RunConfig ConfigBuilder::build() const {
  auto get = [&](std::string_view key) -> std::optional<std::string_view> {
    if (auto it = values_.find(key); it != values_.end()) return std::string_view(it->second);
    return std::nullopt;
  };
  auto positive = [&](std::string_view key, std::string_view text) {
    const double v = to_double(key, text);
    if (!(v > 0.0)) invalid(key, "must be positive");
    return v;
  };

  RunConfig out;
  ExperimentConfig& exp = out.experiment;

  const auto loss_text = get("loss");
  if (!loss_text) invalid("loss", "required (L1, L2, L3 or L4)");
  LossKind kind{};
  try {
    kind = parse_loss_kind(*loss_text);
  } catch (const ValidationError& e) {
    invalid("loss", e.what());
  }
  const auto rho = get("rho");
  const auto gamma = get("gamma");
  if (kind != LossKind::IntervalQuantile && rho) invalid("rho", "only valid with loss=L3");
  if (kind != LossKind::IntervalCentered && gamma) invalid("gamma", "only valid with loss=L4");
  switch (kind) {
    case LossKind::Absolute: exp.loss = LossSpec::absolute(); break;
    case LossKind::Quadratic: exp.loss = LossSpec::quadratic(); break;
    case LossKind::IntervalQuantile: {
      if (!rho) invalid("rho", "required with loss=L3");
      const double v = to_double("rho", *rho);
      if (!(v > 0.0 && v < 1.0)) invalid("rho", "must lie in (0, 1)");
      exp.loss = LossSpec::interval_quantile(v);
      break;
    }
    case LossKind::IntervalCentered: {
      if (!gamma) invalid("gamma", "required with loss=L4");
      exp.loss = LossSpec::interval_centered(positive("gamma", *gamma));
      break;
    }
  }

  const auto a1_text = get("a1");
  if (!a1_text) invalid("a1", "required");
  const double a1 = positive("a1", *a1_text);
  const double b1 = get("b1") ? positive("b1", *get("b1")) : 50.0;
  const double a2 = get("a2") ? positive("a2", *get("a2")) : a1;
  const double b2 = get("b2") ? positive("b2", *get("b2")) : b1;
  exp.prior = PriorSpec{InvGammaParams(a1, b1), InvGammaParams(a2, b2)};

  const auto cost = get("cost");
  if (!cost) invalid("cost", "required");
  exp.unit_cost = positive("cost", *cost);

  if (auto g = get("grid")) exp.grid = parse_grid(*g);
  if (auto k = get("K")) {
    exp.outer_reps = to_int<int>("K", *k);
    if (exp.outer_reps < 1) invalid("K", "must be >= 1");
  }
  if (auto e = get("estimates_per_n")) {
    exp.estimates_per_n = to_int<int>("estimates_per_n", *e);
    if (exp.estimates_per_n < 1) invalid("estimates_per_n", "must be >= 1");
  }
  if (auto r = get("replicates")) {
    out.replicates = to_int<int>("replicates", *r);
    if (out.replicates < 1) invalid("replicates", "must be >= 1");
  }
  if (auto s = get("seed")) exp.seed = to_int<std::uint64_t>("seed", *s);

  MCMCConfig& mc = exp.mcmc;
  if (auto v = get("burn_in")) {
    mc.burn_in = to_int<int>("burn_in", *v);
    if (mc.burn_in < 0) invalid("burn_in", "must be >= 0");
  }
  if (auto v = get("thin")) {
    mc.thin = to_int<int>("thin", *v);
    if (mc.thin < 1) invalid("thin", "must be >= 1");
  }
  if (auto v = get("keep")) {
    mc.keep = to_int<int>("keep", *v);
    if (mc.keep < 2) invalid("keep", "must be >= 2");
  }
  if (auto v = get("initial_step")) mc.initial_step = positive("initial_step", *v);
  if (auto v = get("adapt")) mc.adapt_during_burn_in = to_bool("adapt", *v);
  if (auto v = get("accept_low")) mc.target_acceptance_low = to_double("accept_low", *v);
  if (auto v = get("accept_high")) mc.target_acceptance_high = to_double("accept_high", *v);
  if (!(mc.target_acceptance_low > 0.0 && mc.target_acceptance_low < mc.target_acceptance_high &&
        mc.target_acceptance_high < 1.0)) {
    invalid("accept_low", "acceptance band must satisfy 0 < accept_low < accept_high < 1");
  }

  exp.validate();
  return out;
}

RunConfig parse_config(std::string_view text) {
  ConfigBuilder builder;
  builder.load_text(text);
  return builder.build();
}

std::string to_config_text(const RunConfig& config) {
  const ExperimentConfig& e = config.experiment;
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).push_back('\n');
  };
  out += "[prior]\n";
  line("a1", format_double(e.prior.beta.a()));
  line("b1", format_double(e.prior.beta.b()));
  line("a2", format_double(e.prior.alpha2.a()));
  line("b2", format_double(e.prior.alpha2.b()));
  out += "\n[loss]\n";
  line("loss", std::string(e.loss.name()));
  if (e.loss.kind() == LossKind::IntervalQuantile) line("rho", format_double(e.loss.rho()));
  if (e.loss.kind() == LossKind::IntervalCentered) line("gamma", format_double(e.loss.gamma()));
  out += "\n[run]\n";
  line("cost", format_double(e.unit_cost));
  std::string grid;
  for (std::size_t i = 0; i < e.grid.size(); ++i) {
    if (i > 0) grid += ",";
    grid += std::to_string(e.grid[i]);
  }
  line("grid", grid);
  line("K", std::to_string(e.outer_reps));
  line("estimates_per_n", std::to_string(e.estimates_per_n));
  line("replicates", std::to_string(config.replicates));
  line("seed", std::to_string(e.seed));
  out += "\n[mcmc]\n";
  line("burn_in", std::to_string(e.mcmc.burn_in));
  line("thin", std::to_string(e.mcmc.thin));
  line("keep", std::to_string(e.mcmc.keep));
  line("initial_step", format_double(e.mcmc.initial_step));
  line("adapt", e.mcmc.adapt_during_burn_in ? "true" : "false");
  line("accept_low", format_double(e.mcmc.target_acceptance_low));
  line("accept_high", format_double(e.mcmc.target_acceptance_high));
  return out;
}

}  // namespace bssize
