#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace skms {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "inconclusive";
  }
}

CaseRecord near_case(std::string name, double value, double expected, double tolerance, double error_estimate,
                     std::string provenance) {
  CaseRecord c{std::move(name), Status::Pass, value, expected, tolerance, error_estimate, std::move(provenance), {}};
  c.status = (std::isfinite(value) && std::abs(value - expected) <= tolerance) ? Status::Pass : Status::Fail;
  return c;
}

CaseRecord bound_case(std::string name, double value, double bound, double error_estimate, std::string provenance) {
  CaseRecord c{std::move(name), Status::Pass, value, 0.0, bound, error_estimate, std::move(provenance), {}};
  c.status = (std::isfinite(value) && value <= bound) ? Status::Pass : Status::Fail;
  return c;
}

int Report::failed() const {
  return int(std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.status == Status::Fail; }));
}

void Report::append(const Report& other) {
  cases.insert(cases.end(), other.cases.begin(), other.cases.end());
  strip_samples.insert(strip_samples.end(), other.strip_samples.begin(), other.strip_samples.end());
  wall_time_s += other.wall_time_s;
}

void Report::sort_cases() {
  std::stable_sort(cases.begin(), cases.end(), [](const CaseRecord& a, const CaseRecord& b) { return a.name < b.name; });
}

namespace {

// JSON has no inf/nan; keep them readable.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json Report::to_json(bool include_timing) const {
  nlohmann::json out;
  out["schema"] = 1;
  out["suite"] = suite;
  out["version"] = version;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json rec{{"name", c.name},
                       {"status", skms::to_string(c.status)},
                       {"value", number(c.value)},
                       {"expected", number(c.expected)},
                       {"tolerance", number(c.tolerance)},
                       {"error_estimate", number(c.error_estimate)},
                       {"provenance", c.provenance}};
    if (!c.note.empty()) rec["note"] = c.note;
    list.push_back(std::move(rec));
  }
  out["cases"] = std::move(list);
  out["summary"] = {{"total", cases.size()}, {"failed", failed()}};
  if (include_timing) out["wall_time_s"] = wall_time_s;
  return out;
}

std::string Report::strip_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "pair,re_z,im_z,re_F,im_F,err\n";
  for (const auto& s : strip_samples)
    os << s.pair << ',' << s.re_z << ',' << s.im_z << ',' << s.re_f << ',' << s.im_f << ',' << s.err << '\n';
  return os.str();
}

const char* version_string() { return SKMS_VERSION_STRING; }

}  // namespace skms
