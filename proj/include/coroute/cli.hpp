#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coroute {

/// Exit codes of run_cli.
inline constexpr int kExitFeasible = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;

/// Command-line entry point; `args` excludes the program name. Writes
/// report.json, ugv_route.csv, uav_plan.csv, fitness_trace.csv and
/// routes.svg into --out.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coroute
