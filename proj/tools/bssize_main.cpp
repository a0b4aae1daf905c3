// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bssize/bssize.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

struct BuilderDeleter {
  void operator()(bss_config_builder* b) const { bss_builder_destroy(b); }
};
struct ConfigDeleter {
  void operator()(bss_config* c) const { bss_config_destroy(c); }
};
struct ManifestDeleter {
  void operator()(bss_manifest* m) const { bss_manifest_destroy(m); }
};

int exit_code_for(bss_status status) {
  return status == BSS_ERR_INVALID_ARGUMENT ? kExitValidation : kExitRuntime;
}

int report_failure(const char* stage, bss_status status) {
  std::fprintf(stderr, "bssize: %s: %s\n", stage, bss_last_error());
  return exit_code_for(status);
}

struct Progress {
  bool quiet = false;
  int finished = 0;
  int total = 0;
};

void on_event(const bss_event* ev, void* user) {
  auto* progress = static_cast<Progress*>(user);
  if (ev->kind == BSS_EVENT_WARNING) {
    std::fprintf(stderr, "warning: replicate %d: %s\n", ev->replicate,
                 ev->message != nullptr ? ev->message : "");
    return;
  }
  if (ev->kind != BSS_EVENT_POINT_FINISHED || progress->quiet) return;
  ++progress->finished;
  std::fprintf(stderr, "[%d/%d] replicate %d n=%d estimate %d done (K=%d)\n", progress->finished,
               progress->total, ev->replicate, ev->n, ev->estimate + 1, ev->effective_k);
}

void print_result(const char* label, const bss_ssd_result& r) {
  if (r.worthwhile) {
    std::printf("%-12s n_o = %-6ld (raw %.3f, E=%.6g, G=%.6g, R^2=%.4f)\n", label, r.optimal_n,
                r.raw_value, r.e_hat, r.g_hat, r.r_squared);
  } else {
    std::printf("%-12s not worth sampling (E=%.6g, G=%.6g, R^2=%.4f)\n", label, r.e_hat, r.g_hat,
                r.r_squared);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal Bayesian sample size for the mean of a Birnbaum-Saunders distribution"};
  app.set_version_flag("--version", std::string(bss_version()));

  std::string config_path;
  std::string out_dir;
  unsigned threads = 0;
  bool print_config = false;
  bool quiet = false;
  // Flag name -> config key; values are forwarded verbatim for validation.
  const std::map<std::string, std::string> flag_keys{
      {"--loss", "loss"},       {"--a1", "a1"},
      {"--b1", "b1"},           {"--a2", "a2"},
      {"--b2", "b2"},           {"--rho", "rho"},
      {"--gamma", "gamma"},     {"--cost", "cost"},
      {"--grid", "grid"},       {"--K", "K"},
      {"--keep", "keep"},       {"--burn-in", "burn_in"},
      {"--thin", "thin"},       {"--reps", "replicates"},
      {"--estimates-per-n", "estimates_per_n"}, {"--seed", "seed"},
  };
  std::map<std::string, std::string> flag_values;

  app.add_option("--config", config_path, "key = value configuration file");
  for (const auto& [flag, key] : flag_keys) {
    app.add_option(flag, flag_values[flag], "override config key '" + key + "'");
  }
  app.add_option("--out", out_dir, "directory for points.csv, result.json and curve.svg");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");
  app.add_flag("-q,--quiet", quiet, "suppress per-point progress");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  bss_config_builder* raw_builder = nullptr;
  if (auto st = bss_builder_create(&raw_builder); st != BSS_OK) return report_failure("init", st);
  std::unique_ptr<bss_config_builder, BuilderDeleter> builder(raw_builder);

  if (!config_path.empty()) {
    if (auto st = bss_builder_load_file(builder.get(), config_path.c_str()); st != BSS_OK) {
      // An unreadable file is a usage problem, not a simulation failure.
      std::fprintf(stderr, "bssize: config: %s\n", bss_last_error());
      return kExitValidation;
    }
  }
  for (const auto& [flag, key] : flag_keys) {
    if (app.count(flag) == 0) continue;
    if (auto st = bss_builder_set(builder.get(), key.c_str(), flag_values[flag].c_str());
        st != BSS_OK) {
      return report_failure("config", st);
    }
  }

  bss_config* raw_config = nullptr;
  if (auto st = bss_builder_build(builder.get(), &raw_config); st != BSS_OK) {
    return report_failure("config", st);
  }
  std::unique_ptr<bss_config, ConfigDeleter> config(raw_config);

  if (print_config) {
    char* text = nullptr;
    if (auto st = bss_config_to_text(config.get(), &text); st != BSS_OK) {
      return report_failure("config", st);
    }
    std::fputs(text, stdout);
    bss_string_free(text);
    return kExitOk;
  }

  Progress progress;
  progress.quiet = quiet;
  progress.total = static_cast<int>(bss_config_work_units(config.get()));

  bss_manifest* raw_manifest = nullptr;
  if (auto st = bss_run(config.get(), threads, on_event, &progress, &raw_manifest); st != BSS_OK) {
    return report_failure("run", st);
  }
  std::unique_ptr<bss_manifest, ManifestDeleter> manifest(raw_manifest);

  const size_t reps = bss_manifest_replicate_count(manifest.get());
  for (size_t i = 1; i <= reps; ++i) {
    bss_ssd_result r{};
    bss_manifest_result(manifest.get(), i, &r);
    print_result(("replicate " + std::to_string(i)).c_str(), r);
  }
  bss_ssd_result consensus{};
  bss_manifest_result(manifest.get(), 0, &consensus);
  print_result("consensus", consensus);

  if (!out_dir.empty()) {
    if (auto st = bss_manifest_write_report(manifest.get(), out_dir.c_str()); st != BSS_OK) {
      return report_failure("report", st);
    }
    std::printf("wrote %s/{points.csv,result.json,curve.svg}\n", out_dir.c_str());
  }
  return kExitOk;
}
