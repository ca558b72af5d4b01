#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace skms {

// kernel, skms, araki, jordan, gibbs, svir
const std::vector<std::string>& suite_names();

// Runs one suite, or every suite for "all".  Cases are sorted by name.
// Throws InvalidArgument on an unknown name; NumericalError and
// ConventionError propagate.
Report run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace skms
