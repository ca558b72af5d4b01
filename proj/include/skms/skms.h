/* C interface to the sKMS verification library.
 *
 * Objects are opaque handles released with the matching *_free call.
 * Every fallible call returns an skms_status; on failure the message is
 * available from skms_last_error() on the same thread.  Strings returned
 * through char** are owned by the caller and released with skms_string_free.
 */
#ifndef SKMS_SKMS_H
#define SKMS_SKMS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SKMS_API __declspec(dllexport)
#else
#define SKMS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skms_status {
  SKMS_OK = 0,
  SKMS_ERR_INVALID_ARGUMENT = 1, /* bad input, null handle, unknown suite */
  SKMS_ERR_CONFIG = 2,           /* unreadable config, unknown key, bad value */
  SKMS_ERR_NUMERICAL = 3,        /* error budget not met */
  SKMS_ERR_CONVENTION = 4,       /* self-consistency gate failed */
  SKMS_ERR_INTERNAL = 5
} skms_status;

typedef enum skms_case_status { SKMS_CASE_PASS = 0, SKMS_CASE_FAIL = 1, SKMS_CASE_INCONCLUSIVE = 2 } skms_case_status;

typedef struct skms_config skms_config;
typedef struct skms_report skms_report;

/* Borrowed view of one case; pointers live as long as the report. */
typedef struct skms_case {
  const char* name;
  skms_case_status status;
  double value;
  double expected;
  double tolerance;
  double error_estimate;
  const char* provenance;
  const char* note;
} skms_case;

SKMS_API const char* skms_version(void);
SKMS_API const char* skms_last_error(void);
SKMS_API void skms_string_free(char* s);

/* Configuration: defaults, then a JSON file, then individual overrides. */
SKMS_API skms_status skms_config_new(skms_config** out);
SKMS_API skms_status skms_config_load(const char* path, skms_config** out);
SKMS_API void skms_config_free(skms_config* cfg);
SKMS_API skms_status skms_config_set_seed(skms_config* cfg, uint64_t seed);
SKMS_API skms_status skms_config_set(skms_config* cfg, const char* key, const char* value);
/* "KEY=VAL" */
SKMS_API skms_status skms_config_override(skms_config* cfg, const char* assignment);
SKMS_API skms_status skms_config_set_paths(skms_config* cfg, const char* out_path, const char* csv_path);
/* Output paths from the config; empty when unset. */
SKMS_API const char* skms_config_out_path(const skms_config* cfg);
SKMS_API const char* skms_config_csv_path(const skms_config* cfg);
SKMS_API skms_status skms_config_json(const skms_config* cfg, char** out);

SKMS_API size_t skms_suite_count(void);
SKMS_API const char* skms_suite_name(size_t i);

/* Runs a suite ("all" for every suite). */
SKMS_API skms_status skms_run(const char* suite, const skms_config* cfg, skms_report** out);
SKMS_API void skms_report_free(skms_report* report);
SKMS_API size_t skms_report_case_count(const skms_report* report);
SKMS_API skms_status skms_report_case(const skms_report* report, size_t i, skms_case* out);
SKMS_API int skms_report_failed(const skms_report* report);
SKMS_API double skms_report_wall_time(const skms_report* report);
SKMS_API skms_status skms_report_json(const skms_report* report, int include_timing, char** out);
/* Strip samples as CSV (header only when the suite has none). */
SKMS_API skms_status skms_report_csv(const skms_report* report, char** out);

/* Two-point values for test functions given as JSON, value[0] + i value[1]. */
SKMS_API skms_status skms_theta(const char* f_json, const char* g_json, double value[2], double* error);
SKMS_API skms_status skms_bosonic_2pt(const char* f_json, const char* g_json, double value[2], double* error);

#ifdef __cplusplus
}
#endif

#endif /* SKMS_SKMS_H */
