#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "bssize/bssize.h"
#include "doctest.h"

namespace {

constexpr const char* kQuick =
    "loss = L2\na1 = 10\ncost = 0.01\ngrid = 2,12,22\nK = 3\nestimates_per_n = 2\n"
    "replicates = 2\nburn_in = 100\nthin = 3\nkeep = 100\nseed = 3\n";

struct Counter {
  int started = 0;
  int finished = 0;
};

void count_events(const bss_event* ev, void* user) {
  auto* c = static_cast<Counter*>(user);
  if (ev->kind == BSS_EVENT_POINT_STARTED) ++c->started;
  if (ev->kind == BSS_EVENT_POINT_FINISHED) ++c->finished;
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strlen(bss_version()) > 0);
  bss_config* cfg = nullptr;
  CHECK(bss_config_parse("loss = L3\nrho = 1.2\na1 = 8\ncost = 0.1\n", &cfg) ==
        BSS_ERR_INVALID_ARGUMENT);
  CHECK(cfg == nullptr);
  CHECK(std::string(bss_last_error()).rfind("rho:", 0) == 0);
  CHECK(bss_config_parse(nullptr, &cfg) == BSS_ERR_INVALID_ARGUMENT);
  CHECK(bss_config_parse(kQuick, nullptr) == BSS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("builder round trip through text") {
  bss_config_builder* b = nullptr;
  REQUIRE(bss_builder_create(&b) == BSS_OK);
  CHECK(bss_builder_load_text(b, kQuick) == BSS_OK);
  CHECK(bss_builder_set(b, "seed", "8") == BSS_OK);
  CHECK(bss_builder_set(b, "bogus", "8") == BSS_ERR_INVALID_ARGUMENT);
  CHECK(bss_builder_load_file(b, "/nonexistent/bssize.conf") == BSS_ERR_IO);
  bss_config* cfg = nullptr;
  REQUIRE(bss_builder_build(b, &cfg) == BSS_OK);
  bss_builder_destroy(b);

  CHECK(bss_config_work_units(cfg) == 2u * 3u * 2u);
  char* text = nullptr;
  REQUIRE(bss_config_to_text(cfg, &text) == BSS_OK);
  CHECK(std::string(text).find("seed = 8") != std::string::npos);
  bss_config* again = nullptr;
  CHECK(bss_config_parse(text, &again) == BSS_OK);
  char* text2 = nullptr;
  REQUIRE(bss_config_to_text(again, &text2) == BSS_OK);
  CHECK(std::string(text) == std::string(text2));
  bss_string_free(text);
  bss_string_free(text2);
  bss_config_destroy(again);
  bss_config_destroy(cfg);
}

TEST_CASE("run, inspect and serialize a manifest") {
  bss_config* cfg = nullptr;
  REQUIRE(bss_config_parse(kQuick, &cfg) == BSS_OK);
  Counter counter;
  bss_manifest* m = nullptr;
  REQUIRE(bss_run(cfg, 2, count_events, &counter, &m) == BSS_OK);
  CHECK(counter.started == 12);
  CHECK(counter.finished == 12);
  CHECK(bss_manifest_replicate_count(m) == 2);

  bss_ssd_result r{};
  REQUIRE(bss_manifest_result(m, 0, &r) == BSS_OK);
  CHECK(r.c == 0.01);
  CHECK(r.points_used + r.points_dropped == 6);
  if (r.worthwhile) CHECK(r.optimal_n >= 1);
  CHECK(bss_manifest_result(m, 1, &r) == BSS_OK);
  CHECK(bss_manifest_result(m, 3, &r) == BSS_ERR_INVALID_ARGUMENT);

  char* json = nullptr;
  REQUIRE(bss_manifest_to_json(m, &json) == BSS_OK);
  bss_manifest* back = nullptr;
  REQUIRE(bss_manifest_from_json(json, &back) == BSS_OK);
  char* json2 = nullptr;
  REQUIRE(bss_manifest_to_json(back, &json2) == BSS_OK);
  CHECK(std::string(json) == std::string(json2));
  bss_string_free(json);
  bss_string_free(json2);

  const auto dir = std::filesystem::temp_directory_path() / "bssize_c_api_report";
  std::filesystem::remove_all(dir);
  CHECK(bss_manifest_write_report(back, dir.c_str()) == BSS_OK);
  CHECK(std::filesystem::exists(dir / "points.csv"));
  std::filesystem::remove_all(dir);

  bss_manifest_destroy(back);
  bss_manifest_destroy(m);
  bss_config_destroy(cfg);
}

TEST_CASE("simulation failure maps to its status code") {
  bss_config* cfg = nullptr;
  std::string text = kQuick;
  text += "initial_step = 1000000\nadapt = false\n";
  REQUIRE(bss_config_parse(text.c_str(), &cfg) == BSS_OK);
  bss_manifest* m = nullptr;
  CHECK(bss_run(cfg, 1, nullptr, nullptr, &m) == BSS_ERR_SIMULATION);
  CHECK(m == nullptr);
  CHECK(std::strlen(bss_last_error()) > 0);
  bss_config_destroy(cfg);
}
