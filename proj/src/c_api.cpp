#include "bssize/bssize.h"

#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <thread>

#include "bssize/app.hpp"
#include "bssize/error.hpp"

struct bss_config_builder {
  bssize::ConfigBuilder impl;
};

struct bss_config {
  bssize::RunConfig impl;
};

struct bss_manifest {
  bssize::RunManifest impl;
};

namespace {

thread_local std::string g_last_error;

bss_status fail(bss_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <class F>
bss_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return BSS_OK;
  } catch (const bssize::ValidationError& e) {
    return fail(BSS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(BSS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const bssize::SimulationError& e) {
    return fail(BSS_ERR_SIMULATION, e.what());
  } catch (const bssize::IoError& e) {
    return fail(BSS_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BSS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BSS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BSS_ERR_INTERNAL, "unknown error");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw bssize::ValidationError(what);
}

bss_ssd_result to_c(const bssize::SSDResult& r) {
  bss_ssd_result out{};
  out.worthwhile = r.worthwhile() ? 1 : 0;
  out.optimal_n = r.optimal_n ? *r.optimal_n : 0;
  out.raw_value = r.raw_value;
  out.e_hat = r.curve.e_hat;
  out.g_hat = r.curve.g_hat;
  out.c = r.curve.c;
  out.r_squared = r.curve.r_squared;
  out.points_used = r.curve.points_used;
  out.points_dropped = r.curve.points_dropped;
  return out;
}

bss_event_kind to_c(bssize::GridEvent::Kind kind) {
  switch (kind) {
    case bssize::GridEvent::Kind::PointStarted: return BSS_EVENT_POINT_STARTED;
    case bssize::GridEvent::Kind::PointFinished: return BSS_EVENT_POINT_FINISHED;
    case bssize::GridEvent::Kind::Warning: return BSS_EVENT_WARNING;
  }
  return BSS_EVENT_WARNING;
}

}  // namespace

extern "C" {

const char* bss_version(void) { return bssize::tool_version().data(); }

const char* bss_last_error(void) { return g_last_error.c_str(); }

void bss_string_free(char* s) { delete[] s; }

bss_status bss_builder_create(bss_config_builder** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    *out = new bss_config_builder{};
  });
}

void bss_builder_destroy(bss_config_builder* builder) { delete builder; }

bss_status bss_builder_load_text(bss_config_builder* builder, const char* text) {
  return guarded([&] {
    require(builder != nullptr && text != nullptr, "builder and text must not be NULL");
    builder->impl.load_text(text);
  });
}

bss_status bss_builder_load_file(bss_config_builder* builder, const char* path) {
  return guarded([&] {
    require(builder != nullptr && path != nullptr, "builder and path must not be NULL");
    std::ifstream in(path, std::ios::binary);
    if (!in) throw bssize::IoError(std::string("cannot read config file ") + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    builder->impl.load_text(ss.str());
  });
}

bss_status bss_builder_set(bss_config_builder* builder, const char* key, const char* value) {
  return guarded([&] {
    require(builder != nullptr && key != nullptr && value != nullptr,
            "builder, key and value must not be NULL");
    builder->impl.set(key, value);
  });
}

bss_status bss_builder_build(const bss_config_builder* builder, bss_config** out) {
  return guarded([&] {
    require(builder != nullptr && out != nullptr, "builder and out must not be NULL");
    *out = new bss_config{builder->impl.build()};
  });
}

bss_status bss_config_parse(const char* text, bss_config** out) {
  return guarded([&] {
    require(text != nullptr && out != nullptr, "text and out must not be NULL");
    *out = new bss_config{bssize::parse_config(text)};
  });
}

void bss_config_destroy(bss_config* config) { delete config; }

bss_status bss_config_to_text(const bss_config* config, char** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "config and out must not be NULL");
    *out = copy_string(bssize::to_config_text(config->impl));
  });
}

size_t bss_config_work_units(const bss_config* config) {
  if (config == nullptr) return 0;
  const auto& e = config->impl.experiment;
  return static_cast<size_t>(config->impl.replicates) * e.grid.size() *
         static_cast<size_t>(e.estimates_per_n);
}

bss_status bss_run(const bss_config* config, unsigned threads, bss_event_callback callback,
                   void* user_data, bss_manifest** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "config and out must not be NULL");
    bssize::RunOptions options;
    options.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    if (callback != nullptr) {
      options.on_event = [callback, user_data](const bssize::RunEvent& ev) {
        const bss_event c_event{to_c(ev.grid.kind), ev.replicate,          ev.grid.n,
                                ev.grid.replicate,  ev.grid.effective_reps,
                                ev.grid.message.empty() ? nullptr : ev.grid.message.c_str()};
        callback(&c_event, user_data);
      };
    }
    *out = new bss_manifest{bssize::run(config->impl, options)};
  });
}

void bss_manifest_destroy(bss_manifest* manifest) { delete manifest; }

bss_status bss_manifest_to_json(const bss_manifest* manifest, char** out) {
  return guarded([&] {
    require(manifest != nullptr && out != nullptr, "manifest and out must not be NULL");
    *out = copy_string(bssize::manifest_to_json(manifest->impl));
  });
}

bss_status bss_manifest_from_json(const char* json, bss_manifest** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "json and out must not be NULL");
    *out = new bss_manifest{bssize::manifest_from_json(json)};
  });
}

size_t bss_manifest_replicate_count(const bss_manifest* manifest) {
  return manifest == nullptr ? 0 : manifest->impl.replicates.size();
}

bss_status bss_manifest_result(const bss_manifest* manifest, size_t index, bss_ssd_result* out) {
  return guarded([&] {
    require(manifest != nullptr && out != nullptr, "manifest and out must not be NULL");
    if (index == 0) {
      *out = to_c(manifest->impl.consensus);
      return;
    }
    require(index <= manifest->impl.replicates.size(), "replicate index out of range");
    *out = to_c(manifest->impl.replicates[index - 1].result);
  });
}

bss_status bss_manifest_write_report(const bss_manifest* manifest, const char* out_dir) {
  return guarded([&] {
    require(manifest != nullptr && out_dir != nullptr, "manifest and out_dir must not be NULL");
    bssize::emit_report(manifest->impl, out_dir);
  });
}

}  // extern "C"
