#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace skms {

enum class Status { Pass, Fail, Inconclusive };

std::string to_string(Status s);

struct CaseRecord {
  std::string name;
  Status status = Status::Pass;
  double value = 0.0;     // measured residual or quantity
  double expected = 0.0;  // target value
  double tolerance = 0.0;
  double error_estimate = 0.0;
  std::string provenance;  // which oracle the expectation comes from
  std::string note;        // optional detail (warnings, witnesses)
};

// Pass when |value - expected| <= tolerance.
CaseRecord near_case(std::string name, double value, double expected, double tolerance, double error_estimate,
                     std::string provenance);
// Pass when value <= bound.
CaseRecord bound_case(std::string name, double value, double bound, double error_estimate, std::string provenance);

struct StripSample {
  std::string pair;
  double re_z = 0.0, im_z = 0.0;
  double re_f = 0.0, im_f = 0.0;
  double err = 0.0;
};

struct Report {
  std::string suite;
  std::string version;
  std::vector<CaseRecord> cases;
  std::vector<StripSample> strip_samples;
  double wall_time_s = 0.0;

  int failed() const;
  void append(const Report& other);
  void sort_cases();
  // Deterministic rendering; timing is omitted unless requested.
  nlohmann::json to_json(bool include_timing = true) const;
  std::string strip_csv() const;
};

const char* version_string();

}  // namespace skms
