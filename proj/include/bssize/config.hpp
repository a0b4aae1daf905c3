#pragma once

#include <map>
#include <string>
#include <string_view>

#include "bssize/risk.hpp"

namespace bssize {

/// An experiment plus the number of independent repetitions of the whole
/// pipeline (triplicates by default).
struct RunConfig {
  ExperimentConfig experiment;
  int replicates = 3;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Collects raw key/value settings from config text and individual
/// overrides, then validates them all at once in build().
///
/// Text format: one `key = value` per line, `#` or `;` comments, optional
/// `[prior]`, `[loss]`, `[run]`, `[mcmc]` section headers. A key placed under
/// a header must belong to that section; keys before any header may be
/// anything. Duplicate keys within one text are rejected; set() overrides.
class ConfigBuilder {
 public:
  void load_text(std::string_view text);
  void set(std::string_view key, std::string_view value);

  RunConfig build() const;

 private:
  std::map<std::string, std::string, std::less<>> values_;
};

RunConfig parse_config(std::string_view text);

/// Canonical text form; parse_config(to_config_text(c)) == c.
std::string to_config_text(const RunConfig& config);

/// "start:stop:step" (inclusive) or a comma-separated list.
std::vector<int> parse_grid(std::string_view text);

}  // namespace bssize
