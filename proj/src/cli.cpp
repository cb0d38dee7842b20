#include "coroute/cli.hpp"

#include "coroute/ateams.hpp"
#include "coroute/outer.hpp"
#include "coroute/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

namespace coroute {

namespace {

namespace fs = std::filesystem;

struct Options
{
  std::string scenario;
  std::string mode = "ateams";
  std::uint64_t seed = 0;
  std::size_t pop_size = 30;
  std::size_t budget_rounds = 50;
  double inner_time_limit_s = 2.0;
  unsigned threads = 1;
  bool deterministic = false;
  std::string out = "out";
};

std::optional<fs::path> resolve_scenario(const std::string& name)
{
  if (fs::exists(name))
    return fs::path(name);
  const fs::path bundled = fs::path(COROUTE_DATA_DIR) / name;
  if (fs::exists(bundled))
    return bundled;
  return std::nullopt;
}

void write_file(const fs::path& path, const std::string& text)
{
  std::ofstream f(path, std::ios::binary);
  if (!f)
    throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f)
    throw std::runtime_error("cannot write " + path.string());
}

template <class Fn>
std::string render(Fn&& fn)
{
  std::ostringstream s;
  fn(s);
  return s.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  Options o;
  CLI::App app{"Cooperative UGV-UAV route optimizer"};
  app.add_option("--scenario", o.scenario, "Scenario JSON file or bundled scenario name")->required();
  app.add_option("--mode", o.mode, "ga, ateams or nm")
      ->check(CLI::IsMember({"ga", "ateams", "nm"}));
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--pop-size", o.pop_size, "Population size")->check(CLI::Range(2, 100000));
  app.add_option("--budget-rounds", o.budget_rounds, "Improver rounds (GA generations in ga mode)");
  app.add_option("--inner-time-limit-s", o.inner_time_limit_s,
                 "Wall-clock cap per inner solve, seconds (0 disables)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1, 1024));
  app.add_flag("--deterministic", o.deterministic,
               "Fixed merge order, no inner time cap, no wall-clock in the report");
  app.add_option("--out", o.out, "Output directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  const auto scenario_path = resolve_scenario(o.scenario);
  if (!scenario_path) {
    err << "error: scenario file not found: " << o.scenario << '\n';
    return kExitUsage;
  }
  Scenario scenario;
  try {
    scenario = load_scenario_file(*scenario_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  GlsOptions inner;
  inner.time_limit_s = o.deterministic ? 0.0 : o.inner_time_limit_s;
  const OuterProblem problem(scenario, inner, o.threads);

  ateams::ATeamsConfig config;
  config.capacity = o.pop_size;
  config.improver_rounds_budget = o.budget_rounds;
  config.seed = o.seed;
  config.deterministic = o.deterministic;
  config.parallel_improvers = o.threads > 1;
  config.use_ga = o.mode != "nm";

  RunReport report;
  std::optional<ateams::RunResult> result;
  try {
    if (o.mode == "ga")
      result = ateams::run_conventional_ga(
          [&](const std::vector<UnitVector>& b) { return problem.evaluate(b); }, config);
    else
      result = ateams::run_ateams(problem, config);
  } catch (const ateams::ATeamsError& e) {
    report.diagnostic = e.what();
  }

  try {
    fs::create_directories(o.out);
    const fs::path dir(o.out);
    const bool feasible = result && !result->population.empty();
    if (feasible) {
      const ateams::Solution& best = result->best();
      const OuterDetail detail = rebuild_outer(scenario, best.params, best.tour);
      report = make_report(scenario, best.params, detail);
      report.provenance = ateams::to_string(best.provenance);
      write_file(dir / "ugv_route.csv", render([&](std::ostream& s) { write_route_csv(s, detail.route); }));
      write_file(dir / "uav_plan.csv",
                 render([&](std::ostream& s) { write_plan_csv(s, detail.graph, detail.plan); }));
      write_file(dir / "routes.svg", render([&](std::ostream& s) {
                   render_plot(s, scenario, detail.route, detail.graph, detail.plan);
                 }));
    } else if (report.diagnostic.empty()) {
      report.diagnostic = "no feasible parameter set found";
    }
    report.scenario = scenario.name;
    report.mode = o.mode;
    report.seed = o.seed;
    if (result) {
      report.evaluations = result->trace.total_evaluations;
      report.rounds = result->trace.rounds;
      write_file(dir / "fitness_trace.csv",
                 render([&](std::ostream& s) { ateams::write_trace_csv(s, result->trace); }));
      if (!o.deterministic)
        report.wall_clock_s = result->trace.wall_s;
    }
    write_file(dir / "report.json", to_json(report));

    if (!feasible) {
      err << "infeasible: " << report.diagnostic << '\n';
      return kExitInfeasible;
    }
    out << scenario.name << " [" << o.mode << "] objective " << report.objective_min
        << " min, UGV " << report.ugv.travel_min << " min, UAV " << report.uav.travel_min
        << " min, " << report.evaluations << " evaluations\n";
    return kExitFeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace coroute
