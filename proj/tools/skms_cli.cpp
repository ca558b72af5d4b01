// Command-line harness over the C API.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skms/skms.h"

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kInternal = 3, kUsage = 4 };

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out, csv;
  std::vector<std::string> tol;
  std::string suite;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "JSON config file (flat keys)");
  sub->add_option_function<std::uint64_t>(
      "--seed", [&o](const std::uint64_t& s) { o.seed = s, o.seed_set = true; }, "random seed");
  sub->add_option("--out", o.out, "write the JSON report here instead of stdout");
  sub->add_option("--csv", o.csv, "write strip samples as CSV");
  sub->add_option("--tol", o.tol, "override a parameter, KEY=VAL (repeatable)")
      ->expected(1)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

int status_exit(skms_status s) {
  std::fprintf(stderr, "error: %s\n", skms_last_error());
  switch (s) {
    case SKMS_ERR_CONFIG: return kConfig;
    default: return kInternal;
  }
}

struct ConfigDeleter {
  void operator()(skms_config* c) const { skms_config_free(c); }
};
struct ReportDeleter {
  void operator()(skms_report* r) const { skms_report_free(r); }
};
struct StringDeleter {
  void operator()(char* s) const { skms_string_free(s); }
};
using ConfigPtr = std::unique_ptr<skms_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<skms_report, ReportDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Defaults, then the file, then flags.
skms_status build_config(const Options& o, ConfigPtr& out) {
  skms_config* raw = nullptr;
  skms_status s = o.config_path.empty() ? skms_config_new(&raw) : skms_config_load(o.config_path.c_str(), &raw);
  if (s != SKMS_OK) return s;
  out.reset(raw);
  if (o.seed_set && (s = skms_config_set_seed(raw, o.seed)) != SKMS_OK) return s;
  for (const auto& t : o.tol)
    if ((s = skms_config_override(raw, t.c_str())) != SKMS_OK) return s;
  return skms_config_set_paths(raw, o.out.empty() ? nullptr : o.out.c_str(), o.csv.empty() ? nullptr : o.csv.c_str());
}

bool write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return bool(f);
}

bool known_suite(const std::string& name) {
  if (name == "all") return true;
  for (std::size_t i = 0; i < skms_suite_count(); ++i)
    if (name == skms_suite_name(i)) return true;
  return false;
}

int run(const std::string& suite, const Options& o) {
  if (!known_suite(suite)) {
    std::fprintf(stderr, "error: unknown suite '%s'\n", suite.c_str());
    return kUsage;
  }
  ConfigPtr cfg;
  if (skms_status s = build_config(o, cfg); s != SKMS_OK) return status_exit(s);
  skms_report* raw = nullptr;
  if (skms_status s = skms_run(suite.c_str(), cfg.get(), &raw); s != SKMS_OK) return status_exit(s);
  ReportPtr report(raw);

  char* json = nullptr;
  if (skms_status s = skms_report_json(report.get(), 1, &json); s != SKMS_OK) return status_exit(s);
  StringPtr json_owner(json);
  const std::string out_path = skms_config_out_path(cfg.get());
  if (out_path.empty()) {
    std::fputs(json, stdout);
  } else if (!write_file(out_path, json)) {
    std::fprintf(stderr, "error: cannot write %s\n", out_path.c_str());
    return kConfig;
  }
  const std::string csv_path = skms_config_csv_path(cfg.get());
  if (!csv_path.empty()) {
    char* csv = nullptr;
    if (skms_status s = skms_report_csv(report.get(), &csv); s != SKMS_OK) return status_exit(s);
    StringPtr csv_owner(csv);
    if (!write_file(csv_path, csv)) {
      std::fprintf(stderr, "error: cannot write %s\n", csv_path.c_str());
      return kConfig;
    }
  }

  int inconclusive = 0;
  const std::size_t n = skms_report_case_count(report.get());
  for (std::size_t i = 0; i < n; ++i) {
    skms_case c;
    skms_report_case(report.get(), i, &c);
    if (c.status == SKMS_CASE_INCONCLUSIVE) ++inconclusive;
    if (c.status == SKMS_CASE_FAIL)
      std::fprintf(stderr, "FAIL %s: value %.6g, expected %.6g, tolerance %.3g\n", c.name, c.value, c.expected,
                   c.tolerance);
  }
  const int failed = skms_report_failed(report.get());
  std::fprintf(stderr, "%s: %zu cases, %d failed, %d inconclusive, %.1f s\n", suite.c_str(), n, failed, inconclusive,
               skms_report_wall_time(report.get()));
  return failed ? kFail : kPass;
}

int show_config(const Options& o) {
  ConfigPtr cfg;
  if (skms_status s = build_config(o, cfg); s != SKMS_OK) return status_exit(s);
  char* json = nullptr;
  if (skms_status s = skms_config_json(cfg.get(), &json); s != SKMS_OK) return status_exit(s);
  StringPtr owner(json);
  std::printf("%s\n", json);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification suites for super-KMS functionals"};
  app.set_version_flag("--version", skms_version());
  app.require_subcommand(1);

  Options o;
  for (std::size_t i = 0; i < skms_suite_count(); ++i) {
    const std::string name = skms_suite_name(i);
    add_common(app.add_subcommand(name, "run the " + name + " suite"), o);
  }
  add_common(app.add_subcommand("all", "run every suite"), o);
  auto* run_cmd = app.add_subcommand("run", "run the suite named by --suite");
  add_common(run_cmd, o);
  run_cmd->add_option("--suite", o.suite, "suite name or all")->required();
  add_common(app.add_subcommand("show-config", "print the effective configuration"), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  if (cmd == "show-config") return show_config(o);
  return run(cmd == "run" ? o.suite : cmd, o);
}
