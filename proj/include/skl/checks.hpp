#pragma once

#include "skl/bridge.hpp"
#include "skl/report.hpp"

#include <string>
#include <vector>

namespace skl {

// Hilbert function of a blowup on a degree-e divisor:
// binom(n+2,2) + (7-e) binom(n+1,2) + binom(n,2).
long long blowup_series_dim(int e, int n);

// Identifiers of all verification checks, in execution order.
std::vector<std::string> check_names();

// Run one named check against a prepared workspace. Unknown name -> UsageError.
CheckReport run_check(const Workspace& ws, const std::string& name);

// Run every check whose id matches the filter ("all", an exact id, or a
// comma-separated list; each item may be a substring of the id).
std::vector<CheckReport> run_suite(const Workspace& ws, const std::string& filter);

// Build the workspace from options and run the suite. A presentation that
// fails its genericity gates is reported as a failed check rather than an
// exception, so fault-injected runs still yield a report.
std::vector<CheckReport> run_suite(const DeriveOptions& opt, const std::string& filter);
std::vector<CheckReport> run_suite(const DeriveOptions& opt, const Presentation& pres,
                                   const std::string& filter);

bool all_pass(const std::vector<CheckReport>& reports);

} // namespace skl
