#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "bssize/config.hpp"
#include "bssize/risk.hpp"
#include "bssize/sizing.hpp"

namespace bssize {

std::string_view tool_version();

struct ReplicateRun {
  int index = 0;  // 1-based
  std::uint64_t seed = 0;
  std::vector<RiskPoint> points;
  SSDResult result;
};

struct RunManifest {
  RunConfig config;
  std::string tool_version;
  std::string started;   // ISO-8601 UTC
  std::string finished;  // ISO-8601 UTC
  std::vector<ReplicateRun> replicates;
  SSDResult consensus;
};

struct RunEvent {
  int replicate = 0;  // 1-based pipeline repetition
  GridEvent grid;
};

struct RunOptions {
  unsigned threads = 1;
  std::function<void(const RunEvent&)> on_event;
};

/// Master seed of pipeline repetition `index` (1-based).
std::uint64_t replicate_seed(std::uint64_t master, int index);

/// run_grid -> fit_cost_curve -> optimal_n for each repetition, then
/// consensus. Failures are rethrown with the repetition index attached.
RunManifest run(const RunConfig& config, const RunOptions& options = {});

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(std::string_view text);

std::string points_csv(const RunManifest& manifest);
std::string render_svg(const RunManifest& manifest);

/// Writes points.csv, result.json and curve.svg into out_dir (created if
/// missing) and returns their paths.
std::vector<std::filesystem::path> emit_report(const RunManifest& manifest,
                                               const std::filesystem::path& out_dir);

}  // namespace bssize
