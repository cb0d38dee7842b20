#include "coroute/routing.hpp"

#include "coroute/uav_physics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace coroute {

const char* to_string(VertexKind kind)
{
  switch (kind) {
  case VertexKind::start: return "start";
  case VertexKind::ugv_stop: return "ugv_stop";
  case VertexKind::depot: return "depot";
  case VertexKind::end: return "end";
  case VertexKind::target: return "target";
  }
  return "?";
}

const char* to_string(Rule rule)
{
  switch (rule) {
  case Rule::target_coverage: return "target_coverage";
  case Rule::recharge_reuse: return "recharge_reuse";
  case Rule::endpoints: return "endpoints";
  case Rule::fuel_bounds: return "fuel_bounds";
  case Rule::refuel_to_capacity: return "refuel_to_capacity";
  case Rule::time_window: return "time_window";
  case Rule::consecutive_recharge: return "consecutive_recharge";
  case Rule::unknown_vertex: return "unknown_vertex";
  case Rule::stale_schedule: return "stale_schedule";
  }
  return "?";
}

RoutingGraph::RoutingGraph(std::vector<RoutingVertex> recharge, std::vector<RoutingVertex> targets,
                           double capacity, double uav_speed, double horizon)
    : recharge_count_(recharge.size()),
      capacity_(capacity),
      speed_(uav_speed),
      power_(uav_power(uav_speed)),
      horizon_(horizon)
{
  if (recharge.size() < 2 || recharge.front().kind != VertexKind::start ||
      recharge.back().kind != VertexKind::end)
    throw std::invalid_argument("RoutingGraph: recharge list must run from start to end");
  if (!(capacity > 0.0) || !(uav_speed > 0.0) || !(horizon > 0.0))
    throw std::invalid_argument("RoutingGraph: capacity, speed and horizon must be positive");
  vertices_ = std::move(recharge);
  vertices_.insert(vertices_.end(), targets.begin(), targets.end());
  const std::size_t n = vertices_.size();
  cost_.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost_[i * n + j] = i == j ? 0.0 : distance(vertices_[i].position, vertices_[j].position) / speed_;
}

double RoutingGraph::mean_arc_cost() const
{
  const std::size_t n = size();
  if (n < 2)
    return 0.0;
  return std::accumulate(cost_.begin(), cost_.end(), 0.0) / static_cast<double>(n * (n - 1));
}

RoutingGraph build_routing_graph(const Scenario& scenario, const UgvRoute& route)
{
  const TimeWindow open_all{0.0, scenario.horizon};
  const Point2D home = scenario.depots.at(route.depot_index).position;

  std::vector<RoutingVertex> recharge;
  recharge.push_back({home, VertexKind::start, open_all, route.depot_index});
  for (std::size_t k = 0; k < route.stop_windows.size(); ++k) {
    const StopWindow& w = route.stop_windows[k];
    recharge.push_back({route.waypoints[w.waypoint].position, VertexKind::ugv_stop,
                        {w.open, w.close}, k + 1});
  }
  for (const Depot& d : scenario.depots)
    recharge.push_back({d.position, VertexKind::depot, open_all, d.id});
  recharge.push_back({home, VertexKind::end, open_all, route.depot_index});

  std::vector<RoutingVertex> targets;
  std::size_t next_covered = 0;
  for (std::size_t k = 0; k < scenario.targets.size(); ++k) {
    if (next_covered < route.covered_targets.size() && route.covered_targets[next_covered] == k) {
      ++next_covered;
      continue;
    }
    targets.push_back({scenario.targets[k], VertexKind::target, open_all, k});
  }
  return RoutingGraph(std::move(recharge), std::move(targets), scenario.uav_spec.fuel_capacity,
                      scenario.uav_spec.speed, scenario.horizon);
}

std::vector<std::vector<int>> UavPlan::sorties(const RoutingGraph& graph) const
{
  std::vector<std::vector<int>> out;
  if (tour.empty())
    return out;
  std::vector<int> current{tour.front()};
  for (std::size_t i = 1; i < tour.size(); ++i) {
    current.push_back(tour[i]);
    if (graph.is_recharge(tour[i])) {
      out.push_back(current);
      current = {tour[i]};
    }
  }
  if (current.size() > 1)
    out.push_back(current);
  return out;
}

std::vector<int> UavPlan::dropped(const RoutingGraph& graph) const
{
  std::vector<int> out;
  for (int v = 1; v < graph.end_vertex(); ++v) {
    if (std::find(tour.begin(), tour.end(), v) == tour.end())
      out.push_back(v);
  }
  return out;
}

UavPlan UavPlan::from_sorties(const std::vector<std::vector<int>>& sorties)
{
  UavPlan plan;
  for (const auto& s : sorties) {
    if (s.empty())
      continue;
    const bool joins = !plan.tour.empty() && plan.tour.back() == s.front();
    plan.tour.insert(plan.tour.end(), s.begin() + (joins ? 1 : 0), s.end());
  }
  return plan;
}

double service_time(double arrival_fuel, double capacity)
{
  const double deficit = std::clamp(capacity - arrival_fuel, 0.0, kUavCapacity);
  return recharge_time(kUavCapacity - deficit);
}

namespace {

constexpr double kTimeEps = 1e-6;
constexpr double kFuelEps = 1e-6;

struct Schedule
{
  std::vector<double> time, fuel, service;
};

// Shared rule engine for the fast and the reporting checker. `report`
// receives (rule, position, vertex, value) and returns false to stop early.
template <class Report>
bool simulate(const RoutingGraph& g, std::span<const int> tour, Report&& report,
              Schedule* out, double* cost_out)
{
  const int n = static_cast<int>(g.size());
  const int m = g.end_vertex();
  bool ok = true;
  const auto flag = [&](Rule r, int pos, int v, double value) {
    ok = false;
    return report(r, pos, v, value);
  };

  if (tour.empty()) {
    for (int v = g.first_target(); v < n; ++v)
      if (!flag(Rule::target_coverage, -1, v, 0.0))
        return false;
    if (cost_out)
      *cost_out = 0.0;
    return ok;
  }

  for (std::size_t p = 0; p < tour.size(); ++p) {
    if (tour[p] < 0 || tour[p] >= n) {
      flag(Rule::unknown_vertex, static_cast<int>(p), tour[p], 0.0);
      return false;
    }
  }

  const int last = static_cast<int>(tour.size()) - 1;
  if (tour.front() != 0 && !flag(Rule::endpoints, 0, tour.front(), 0.0))
    return false;
  if (tour.back() != m && !flag(Rule::endpoints, last, tour.back(), 0.0))
    return false;
  if (tour.size() < 3 && !flag(Rule::endpoints, last, tour.back(), 0.0))
    return false;

  thread_local std::vector<int> seen;
  seen.assign(static_cast<std::size_t>(n), 0);
  for (int p = 0; p <= last; ++p) {
    const int v = tour[static_cast<std::size_t>(p)];
    ++seen[static_cast<std::size_t>(v)];
    if ((v == 0 && p != 0) || (v == m && p != last))
      if (!flag(Rule::endpoints, p, v, 0.0))
        return false;
    if (p > 0 && g.is_recharge(v) && g.is_recharge(tour[static_cast<std::size_t>(p) - 1]))
      if (!flag(Rule::consecutive_recharge, p, v, 0.0))
        return false;
  }
  for (int v = g.first_target(); v < n; ++v)
    if (seen[static_cast<std::size_t>(v)] != 1 &&
        !flag(Rule::target_coverage, -1, v, seen[static_cast<std::size_t>(v)]))
      return false;
  for (int v = 1; v < m; ++v)
    if (seen[static_cast<std::size_t>(v)] > 1 &&
        !flag(Rule::recharge_reuse, -1, v, seen[static_cast<std::size_t>(v)]))
      return false;

  const double q = g.capacity();
  double t = 0.0, fuel = q, service = 0.0, cost = 0.0;
  if (out) {
    out->time.assign(tour.size(), 0.0);
    out->fuel.assign(tour.size(), 0.0);
    out->service.assign(tour.size(), 0.0);
    out->fuel[0] = q;
  }
  for (int p = 1; p <= last; ++p) {
    const int i = tour[static_cast<std::size_t>(p) - 1];
    const int j = tour[static_cast<std::size_t>(p)];
    const double arrival = fuel - g.energy(i, j);
    t += service + g.cost(i, j);
    cost += g.cost(i, j);
    if (arrival < -kFuelEps && !flag(Rule::fuel_bounds, p, j, arrival))
      return false;
    if (g.is_intermediate_recharge(j)) {
      service = service_time(std::max(arrival, 0.0), q);
      fuel = q;
    } else {
      service = 0.0;
      fuel = arrival;
    }
    const TimeWindow& w = g.vertex(j).window;
    if ((t < w.open - kTimeEps || t + service > w.close + kTimeEps) &&
        !flag(Rule::time_window, p, j, t))
      return false;
    if (out) {
      out->time[static_cast<std::size_t>(p)] = t;
      out->fuel[static_cast<std::size_t>(p)] = fuel;
      out->service[static_cast<std::size_t>(p)] = service;
    }
  }
  if (cost_out)
    *cost_out = cost;
  return ok;
}

std::string describe(const RoutingGraph& g, Rule r, int vertex, double value)
{
  std::ostringstream s;
  s << to_string(r) << ": vertex " << vertex;
  if (vertex >= 0 && vertex < static_cast<int>(g.size()))
    s << " (" << to_string(g.vertex(vertex).kind) << ")";
  switch (r) {
  case Rule::fuel_bounds: s << " reached with fuel " << value << " J"; break;
  case Rule::time_window: {
    const TimeWindow& w = g.vertex(vertex).window;
    s << " at t=" << value << " s outside [" << w.open << ", " << w.close << "]";
    break;
  }
  case Rule::target_coverage: s << " visited " << value << " times"; break;
  case Rule::recharge_reuse: s << " used " << value << " times"; break;
  default: break;
  }
  return s.str();
}

}  // namespace

void propagate(const RoutingGraph& graph, UavPlan& plan)
{
  Schedule sched;
  double cost = 0.0;
  simulate(graph, plan.tour, [](Rule, int, int, double) { return true; }, &sched, &cost);
  plan.time_at = std::move(sched.time);
  plan.fuel_at = std::move(sched.fuel);
  plan.service_at = std::move(sched.service);
  plan.cost = cost;
}

std::vector<Violation> check_feasible(const RoutingGraph& graph, const UavPlan& plan)
{
  std::vector<Violation> out;
  Schedule sched;
  simulate(
      graph, plan.tour,
      [&](Rule r, int pos, int v, double value) {
        out.push_back({r, pos, v, describe(graph, r, v, value)});
        return true;
      },
      &sched, nullptr);

  const bool stored = !plan.tour.empty() && plan.fuel_at.size() == plan.tour.size() &&
                      plan.time_at.size() == plan.tour.size() &&
                      sched.fuel.size() == plan.tour.size();
  if (stored) {
    for (std::size_t p = 0; p + 1 < plan.tour.size(); ++p) {
      const int v = plan.tour[p];
      if (graph.is_recharge(v) && std::abs(plan.fuel_at[p] - graph.capacity()) > kFuelEps)
        out.push_back({Rule::refuel_to_capacity, static_cast<int>(p), v,
                       "refuel_to_capacity: departs recharge vertex " + std::to_string(v) +
                           " with " + std::to_string(plan.fuel_at[p]) + " J"});
    }
    for (std::size_t p = 0; p < plan.tour.size(); ++p) {
      const int v = plan.tour[p];
      if (plan.fuel_at[p] < -kFuelEps || plan.fuel_at[p] > graph.capacity() + kFuelEps)
        out.push_back({Rule::fuel_bounds, static_cast<int>(p), v,
                       "fuel_bounds: stored fuel outside [0, capacity]"});
      if (std::abs(plan.time_at[p] - sched.time[p]) > 1e-3 ||
          std::abs(plan.fuel_at[p] - sched.fuel[p]) > 1e-3)
        out.push_back({Rule::stale_schedule, static_cast<int>(p), v,
                       "stale_schedule: stored time/fuel disagree with propagation"});
    }
  }
  return out;
}

bool tour_feasible(const RoutingGraph& graph, std::span<const int> tour, double* cost)
{
  return simulate(graph, tour, [](Rule, int, int, double) { return false; }, nullptr, cost);
}

double tour_cost(const RoutingGraph& graph, std::span<const int> tour)
{
  double c = 0.0;
  for (std::size_t p = 1; p < tour.size(); ++p)
    c += graph.cost(tour[p - 1], tour[p]);
  return c;
}

UavMetrics evaluate_plan(const RoutingGraph& graph, const UavPlan& plan)
{
  if (!check_feasible(graph, plan).empty())
    throw std::invalid_argument("evaluate_plan: plan is infeasible");
  UavMetrics m;
  if (plan.tour.empty())
    return m;
  UavPlan p = plan;
  propagate(graph, p);
  m.travel_s = p.time_at.back();
  for (std::size_t i = 1; i < p.tour.size(); ++i) {
    m.energy_j += graph.energy(p.tour[i - 1], p.tour[i]);
    const int v = p.tour[i];
    if (graph.is_target(v))
      ++m.targets_visited;
    else if (graph.is_intermediate_recharge(v)) {
      if (graph.vertex(v).kind == VertexKind::ugv_stop)
        ++m.recharges_on_ugv;
      else
        ++m.recharges_on_depot;
    }
  }
  return m;
}

void write_plan_csv(std::ostream& out, const RoutingGraph& graph, const UavPlan& plan)
{
  out << "sortie,seq,vertex_kind,x_km,y_km,t_s,fuel_j,service_s\n";
  UavPlan p = plan;
  propagate(graph, p);
  int sortie = 0;
  int seq = 0;
  for (std::size_t i = 0; i < p.tour.size(); ++i) {
    const RoutingVertex& v = graph.vertex(p.tour[i]);
    out << sortie << ',' << seq++ << ',' << to_string(v.kind) << ',' << v.position.x / 1000.0
        << ',' << v.position.y / 1000.0 << ',' << p.time_at[i] << ',' << p.fuel_at[i] << ','
        << p.service_at[i] << '\n';
    if (i > 0 && graph.is_intermediate_recharge(p.tour[i])) {
      ++sortie;
      seq = 0;
    }
  }
}

}  // namespace coroute
