#pragma once

#include "coroute/geometry.hpp"
#include "coroute/scenario.hpp"
#include "coroute/ugv.hpp"

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace coroute {

enum class VertexKind { start, ugv_stop, depot, end, target };

const char* to_string(VertexKind kind);

struct TimeWindow
{
  double open = 0.0;
  double close = 0.0;
};

struct RoutingVertex
{
  Point2D position;
  VertexKind kind = VertexKind::target;
  TimeWindow window;
  std::size_t source = 0;  // scenario target index, depot index or stop number
};

/// Inner routing instance. Vertices 0..m are recharge vertices (0 is the
/// start, m the end copy of the start depot); m+1.. are mandatory targets.
class RoutingGraph
{
public:
  RoutingGraph() = default;

  /// `recharge` must start with a start vertex and end with an end vertex.
  RoutingGraph(std::vector<RoutingVertex> recharge, std::vector<RoutingVertex> targets,
               double capacity, double uav_speed, double horizon);

  std::size_t size() const { return vertices_.size(); }
  int end_vertex() const { return static_cast<int>(recharge_count_) - 1; }
  int first_target() const { return static_cast<int>(recharge_count_); }
  std::size_t recharge_count() const { return recharge_count_; }
  std::size_t target_count() const { return vertices_.size() - recharge_count_; }

  bool is_recharge(int v) const { return v >= 0 && v < static_cast<int>(recharge_count_); }
  bool is_target(int v) const { return v >= first_target() && v < static_cast<int>(size()); }
  /// Recharge vertex strictly between start and end.
  bool is_intermediate_recharge(int v) const { return v > 0 && v < end_vertex(); }

  const RoutingVertex& vertex(int v) const { return vertices_[static_cast<std::size_t>(v)]; }
  const std::vector<RoutingVertex>& vertices() const { return vertices_; }

  /// Travel seconds between two vertices.
  double cost(int i, int j) const { return cost_[static_cast<std::size_t>(i) * size() + static_cast<std::size_t>(j)]; }
  /// Flight energy between two vertices, J.
  double energy(int i, int j) const { return power_ * cost(i, j); }

  double capacity() const { return capacity_; }
  double speed() const { return speed_; }
  double power() const { return power_; }
  double horizon() const { return horizon_; }
  double mean_arc_cost() const;

private:
  std::vector<RoutingVertex> vertices_;
  std::size_t recharge_count_ = 0;
  std::vector<double> cost_;
  double capacity_ = 0.0;
  double speed_ = 0.0;
  double power_ = 0.0;
  double horizon_ = 0.0;
};

/// Targets the UGV does not cover become mandatory UAV visits; recharge
/// vertices are the start depot, the two UGV stops, every depot and the end.
RoutingGraph build_routing_graph(const Scenario& scenario, const UgvRoute& route);

/// A UAV route as one vertex sequence 0 .. m. Recharge vertices inside the
/// sequence split it into sorties. Empty means the UAV never leaves.
struct UavPlan
{
  std::vector<int> tour;
  std::vector<double> time_at;     // arrival, s
  std::vector<double> fuel_at;     // J; capacity at recharge vertices
  std::vector<double> service_at;  // recharge seconds
  double cost = 0.0;               // travel seconds

  bool empty() const { return tour.empty(); }
  std::vector<std::vector<int>> sorties(const RoutingGraph& graph) const;
  std::vector<int> dropped(const RoutingGraph& graph) const;
  static UavPlan from_sorties(const std::vector<std::vector<int>>& sorties);
};

enum class Rule {
  target_coverage,       // every target exactly once
  recharge_reuse,        // each recharge vertex at most once
  endpoints,             // start at 0, end at m, nothing after m
  fuel_bounds,           // 0 <= fuel <= capacity
  refuel_to_capacity,    // departure from a recharge vertex with a full tank
  time_window,           // arrival and recharge inside the vertex window
  consecutive_recharge,  // no arc between two recharge vertices
  unknown_vertex,
  stale_schedule,        // stored schedule disagrees with propagation
};

const char* to_string(Rule rule);

struct Violation
{
  Rule rule;
  int position = -1;
  int vertex = -1;
  std::string detail;
};

/// Seconds to recharge from `arrival_fuel` on a battery of `capacity`.
double service_time(double arrival_fuel, double capacity);

/// Forward-propagate time, fuel and service along the tour and compute cost.
/// The tour must reference valid vertices.
void propagate(const RoutingGraph& graph, UavPlan& plan);

/// Every rule the plan breaks; empty iff feasible.
std::vector<Violation> check_feasible(const RoutingGraph& graph, const UavPlan& plan);

/// Allocation-light feasibility test for candidate tours. Agrees with
/// check_feasible on tours without a stored schedule. On success writes the
/// travel cost.
bool tour_feasible(const RoutingGraph& graph, std::span<const int> tour, double* cost = nullptr);

double tour_cost(const RoutingGraph& graph, std::span<const int> tour);

struct UavMetrics
{
  double travel_s = 0.0;  // completion time, flight plus recharge
  double energy_j = 0.0;
  std::size_t targets_visited = 0;
  std::size_t recharges_on_ugv = 0;
  std::size_t recharges_on_depot = 0;
};

/// Throws std::invalid_argument for infeasible plans.
UavMetrics evaluate_plan(const RoutingGraph& graph, const UavPlan& plan);

/// CSV: sortie,seq,vertex_kind,x_km,y_km,t_s,fuel_j,service_s.
void write_plan_csv(std::ostream& out, const RoutingGraph& graph, const UavPlan& plan);

}  // namespace coroute
