#include "skms/skms.h"

#include <cstring>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "kernel.hpp"
#include "suites.hpp"

struct skms_config {
  skms::RunConfig cfg;
};

struct skms_report {
  skms::Report report;
};

namespace {

thread_local std::string last_error;

skms_status fail(skms_status s, const std::string& what) {
  last_error = what;
  return s;
}

// Maps library exceptions onto status codes.
template <class F>
skms_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return SKMS_OK;
  } catch (const skms::ConfigError& e) {
    return fail(SKMS_ERR_CONFIG, e.what());
  } catch (const skms::InvalidArgument& e) {
    return fail(SKMS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const skms::NumericalError& e) {
    return fail(SKMS_ERR_NUMERICAL, e.what());
  } catch (const skms::ConventionError& e) {
    return fail(SKMS_ERR_CONVENTION, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(SKMS_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SKMS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SKMS_ERR_INTERNAL, "unknown exception");
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(const void* p, const char* what) {
  if (!p) throw skms::InvalidArgument(std::string(what) + " is null");
}

skms_status two_point(const char* f_json, const char* g_json, double value[2], double* error, bool bosonic) {
  return guarded([&] {
    require(f_json, "f");
    require(g_json, "g");
    require(value, "value");
    const auto f = skms::test_function_from_json(nlohmann::json::parse(f_json));
    const auto g = skms::test_function_from_json(nlohmann::json::parse(g_json));
    const auto e = bosonic ? skms::bosonic_2pt(f, g) : skms::theta(f, g);
    value[0] = e.value.real();
    value[1] = e.value.imag();
    if (error) *error = e.error;
  });
}

}  // namespace

extern "C" {

const char* skms_version(void) { return skms::version_string(); }
const char* skms_last_error(void) { return last_error.c_str(); }
void skms_string_free(char* s) { delete[] s; }

skms_status skms_config_new(skms_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new skms_config{};
  });
}

skms_status skms_config_load(const char* path, skms_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new skms_config{skms::load_config(path)};
  });
}

void skms_config_free(skms_config* cfg) { delete cfg; }

skms_status skms_config_set_seed(skms_config* cfg, uint64_t seed) {
  return guarded([&] {
    require(cfg, "config");
    cfg->cfg.seed = seed;
  });
}

skms_status skms_config_set(skms_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    cfg->cfg.set(key, std::string(value));
  });
}

skms_status skms_config_override(skms_config* cfg, const char* assignment) {
  return guarded([&] {
    require(cfg, "config");
    require(assignment, "assignment");
    cfg->cfg.apply_override(assignment);
  });
}

skms_status skms_config_set_paths(skms_config* cfg, const char* out_path, const char* csv_path) {
  return guarded([&] {
    require(cfg, "config");
    if (out_path) cfg->cfg.out_path = out_path;
    if (csv_path) cfg->cfg.csv_path = csv_path;
  });
}

const char* skms_config_out_path(const skms_config* cfg) { return cfg ? cfg->cfg.out_path.c_str() : ""; }
const char* skms_config_csv_path(const skms_config* cfg) { return cfg ? cfg->cfg.csv_path.c_str() : ""; }

skms_status skms_config_json(const skms_config* cfg, char** out) {
  return guarded([&] {
    require(cfg, "config");
    require(out, "out");
    *out = copy_string(cfg->cfg.to_json().dump(2));
  });
}

size_t skms_suite_count(void) { return skms::suite_names().size(); }

const char* skms_suite_name(size_t i) {
  const auto& names = skms::suite_names();
  return i < names.size() ? names[i].c_str() : nullptr;
}

skms_status skms_run(const char* suite, const skms_config* cfg, skms_report** out) {
  return guarded([&] {
    require(suite, "suite");
    require(cfg, "config");
    require(out, "out");
    *out = new skms_report{skms::run_suite(suite, cfg->cfg)};
  });
}

void skms_report_free(skms_report* report) { delete report; }

size_t skms_report_case_count(const skms_report* report) { return report ? report->report.cases.size() : 0; }

skms_status skms_report_case(const skms_report* report, size_t i, skms_case* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (i >= report->report.cases.size()) throw skms::InvalidArgument("case index out of range");
    const auto& c = report->report.cases[i];
    out->name = c.name.c_str();
    out->status = c.status == skms::Status::Pass   ? SKMS_CASE_PASS
                  : c.status == skms::Status::Fail ? SKMS_CASE_FAIL
                                                   : SKMS_CASE_INCONCLUSIVE;
    out->value = c.value;
    out->expected = c.expected;
    out->tolerance = c.tolerance;
    out->error_estimate = c.error_estimate;
    out->provenance = c.provenance.c_str();
    out->note = c.note.c_str();
  });
}

int skms_report_failed(const skms_report* report) { return report ? report->report.failed() : 0; }

double skms_report_wall_time(const skms_report* report) { return report ? report->report.wall_time_s : 0.0; }

skms_status skms_report_json(const skms_report* report, int include_timing, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = copy_string(report->report.to_json(include_timing != 0).dump(2) + "\n");
  });
}

skms_status skms_report_csv(const skms_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = copy_string(report->report.strip_csv());
  });
}

skms_status skms_theta(const char* f_json, const char* g_json, double value[2], double* error) {
  return two_point(f_json, g_json, value, error, false);
}

skms_status skms_bosonic_2pt(const char* f_json, const char* g_json, double value[2], double* error) {
  return two_point(f_json, g_json, value, error, true);
}

}  // extern "C"
