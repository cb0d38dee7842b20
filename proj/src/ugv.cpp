#include "coroute/ugv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coroute {

UgvParams decode_params(std::span<const double> unit, int depot_count)
{
  if (unit.size() != 7)
    throw std::invalid_argument("decode_params: expected 7 components");
  for (std::size_t i = 0; i < unit.size(); ++i) {
    if (!(unit[i] >= 0.0 && unit[i] <= 1.0))
      throw std::invalid_argument("decode_params: component " + std::to_string(i) +
                                  " outside [0, 1]");
  }
  const auto wait = [](double u) {
    return static_cast<int>(std::lround(kMinWaitMin + u * (kMaxWaitMin - kMinWaitMin)));
  };
  UgvParams p;
  p.start_depot =
      std::min(depot_count - 1, static_cast<int>(std::floor(unit[gene::depot] * depot_count))) + 1;
  p.stop1_s = unit[gene::stop1];
  p.stop2_s = unit[gene::stop2];
  p.wait1_min = wait(unit[gene::wait1]);
  p.wait2_min = wait(unit[gene::wait2]);
  return p;
}

UnitVector encode_params(const UgvParams& p, int depot_count)
{
  const auto wait = [](int w) { return (w - kMinWaitMin) / (kMaxWaitMin - kMinWaitMin); };
  UnitVector u{};
  u[gene::depot] = (p.start_depot - 0.5) / depot_count;
  u[gene::stop1] = p.stop1_s;
  u[gene::stop1_pad] = 0.5;
  u[gene::stop2] = p.stop2_s;
  u[gene::stop2_pad] = 0.5;
  u[gene::wait1] = wait(p.wait1_min);
  u[gene::wait2] = wait(p.wait2_min);
  return u;
}

UgvRoute build_ugv_route(const Scenario& scenario, const UgvParams& params,
                         double coverage_radius)
{
  if (params.start_depot < 1 || params.start_depot > static_cast<int>(scenario.depots.size()))
    throw std::invalid_argument("build_ugv_route: start depot out of range");

  const double speed = scenario.ugv_spec.speed;
  const Point2D depot = scenario.depots[params.start_depot - 1].position;
  const Point2D stop1 = scenario.region_point(scenario.stop_region_1, params.stop1_s);
  const Point2D stop2 = scenario.region_point(scenario.stop_region_2, params.stop2_s);

  UgvRoute route;
  route.depot_index = static_cast<std::size_t>(params.start_depot - 1);
  route.waypoints.push_back({depot, 0.0, 0.0, WaypointKind::depot});

  double t = 0.0;
  Point2D here = depot;
  const auto drive_to = [&](Point2D goal, WaypointKind kind, double wait_s) {
    const Polyline leg = road_path(scenario, here, goal);
    const auto& pts = leg.points();
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double d = distance(pts[i - 1], pts[i]);
      t += d / speed;
      route.drive_time += d / speed;
      route.length += d;
      if (i + 1 < pts.size())
        route.waypoints.push_back({pts[i], t, t, WaypointKind::drive});
    }
    route.waypoints.push_back({goal, t, t + wait_s, kind});
    if (kind == WaypointKind::stop)
      route.stop_windows.push_back({route.waypoints.size() - 1, t, t + wait_s});
    t += wait_s;
    route.wait_time += wait_s;
    here = goal;
  };

  drive_to(stop1, WaypointKind::stop, params.wait1_min * 60.0);
  drive_to(stop2, WaypointKind::stop, params.wait2_min * 60.0);
  drive_to(depot, WaypointKind::depot, 0.0);

  route.total_time = t;
  route.covered_targets = covered_targets(scenario, route, coverage_radius);
  route.energy = ugv_energy(route, scenario.ugv_spec).joules;
  return route;
}

std::vector<std::size_t> covered_targets(const Scenario& scenario, const UgvRoute& route,
                                         double radius)
{
  std::vector<std::size_t> covered;
  const auto& wp = route.waypoints;
  for (std::size_t k = 0; k < scenario.targets.size(); ++k) {
    const Point2D p = scenario.targets[k];
    bool hit = wp.size() == 1 && distance(p, wp.front().position) <= radius;
    for (std::size_t i = 0; !hit && i + 1 < wp.size(); ++i)
      hit = distance_to_segment(p, wp[i].position, wp[i + 1].position) <= radius;
    if (hit)
      covered.push_back(k);
  }
  return covered;
}

double ugv_power(double v)
{
  if (v < 0.0)
    throw std::invalid_argument("ugv_power: negative speed");
  return 464.8 * v + 356.3;
}

UgvEnergy ugv_energy(const UgvRoute& route, const VehicleSpec& spec)
{
  UgvEnergy e;
  e.joules = ugv_power(spec.speed) * route.drive_time + ugv_power(0.0) * route.wait_time;
  e.within_capacity = e.joules <= spec.fuel_capacity;
  return e;
}

void write_route_csv(std::ostream& out, const UgvRoute& route)
{
  out << "t_s,x_km,y_km,state\n";
  for (const Waypoint& w : route.waypoints) {
    const double x = w.position.x / 1000.0;
    const double y = w.position.y / 1000.0;
    if (w.kind == WaypointKind::stop) {
      out << w.arrive << ',' << x << ',' << y << ",wait\n";
      out << w.depart << ',' << x << ',' << y << ",drive\n";
    } else {
      out << w.arrive << ',' << x << ',' << y << ",drive\n";
    }
  }
}

}  // namespace coroute
