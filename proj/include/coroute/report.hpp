#pragma once

#include "coroute/outer.hpp"
#include "coroute/routing.hpp"
#include "coroute/scenario.hpp"
#include "coroute/ugv.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace coroute {

struct RunReport
{
  std::string scenario;
  std::string mode;
  std::string provenance;
  std::uint64_t seed = 0;
  bool feasible = false;
  std::string diagnostic;  // why the run is infeasible
  double objective_min = 0.0;
  double total_time_min = 0.0;
  struct
  {
    double travel_min = 0.0;
    double energy_mj = 0.0;
    std::size_t targets = 0;
  } ugv;
  struct
  {
    double travel_min = 0.0;
    double energy_kj = 0.0;
    std::size_t recharges_on_ugv = 0;
    std::size_t recharges_on_depot = 0;
    std::size_t targets = 0;
  } uav;
  UgvParams params;
  Point2D stop1;  // m
  Point2D stop2;  // m
  std::size_t evaluations = 0;
  std::size_t rounds = 0;
  std::optional<double> wall_clock_s;  // unset in deterministic runs
};

/// Metrics of a feasible solution. objective_min is |ugv - uav| completion
/// time and total_time_min the later of the two.
RunReport make_report(const Scenario& scenario, const UgvParams& params, const OuterDetail& detail);

/// Pretty-printed JSON with a fixed key order.
std::string to_json(const RunReport& report);

/// SVG map: road branches, targets coloured by the vehicle that covers them
/// (UGV blue, UAV red), red crosses at UGV recharges, UAV range circles of
/// radius endurance_radius around the start and every recharge used.
void render_plot(std::ostream& out, const Scenario& scenario, const UgvRoute& route,
                 const RoutingGraph& graph, const UavPlan& plan);

}  // namespace coroute
