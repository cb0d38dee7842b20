#include "coroute/outer.hpp"

#include "coroute/parallel.hpp"

#include <cmath>

namespace coroute {

double outer_objective(double ugv_total_min, double uav_total_min)
{
  return std::abs(ugv_total_min - uav_total_min);
}

double infeasible_fitness(const Scenario& scenario, std::size_t uncovered)
{
  return scenario.horizon / 60.0 + 100.0 * static_cast<double>(uncovered);
}

OuterEvaluation evaluate_outer(const Scenario& scenario, const UnitVector& unit,
                               const GlsOptions& inner)
{
  OuterEvaluation ev;
  ev.unit = unit;
  ev.params = decode_params(unit, static_cast<int>(scenario.depots.size()));
  const UgvRoute route = build_ugv_route(scenario, ev.params);
  ev.ugv_min = route.total_time / 60.0;

  const RoutingGraph graph = build_routing_graph(scenario, route);
  const InnerResult solved = guided_local_search(graph, inner);

  if (!solved.ok()) {
    ev.uncovered = solved.unreachable.size();
    ev.failure = "unreachable target";
  } else if (const auto violations = check_feasible(graph, solved.plan); !violations.empty()) {
    ev.failure = std::string("uav plan violates ") + to_string(violations.front().rule);
  } else if (!ugv_energy(route, scenario.ugv_spec).within_capacity) {
    ev.failure = "ugv energy exceeds capacity";
  } else if (route.total_time > scenario.horizon) {
    ev.failure = "ugv route exceeds horizon";
  }

  if (solved.ok()) {
    ev.tour = solved.plan.tour;
    if (ev.failure.empty() && !solved.plan.empty())
      ev.uav_min = evaluate_plan(graph, solved.plan).travel_s / 60.0;
  }
  ev.feasible = ev.failure.empty();
  ev.fitness = ev.feasible ? outer_objective(ev.ugv_min, ev.uav_min)
                           : infeasible_fitness(scenario, ev.uncovered);
  return ev;
}

OuterDetail rebuild_outer(const Scenario& scenario, const UgvParams& params,
                          const std::vector<int>& tour)
{
  OuterDetail d;
  d.route = build_ugv_route(scenario, params);
  d.graph = build_routing_graph(scenario, d.route);
  d.plan.tour = tour;
  if (!tour.empty())
    propagate(d.graph, d.plan);
  return d;
}

OuterProblem::OuterProblem(const Scenario& scenario, GlsOptions inner, unsigned threads)
    : scenario_(&scenario), inner_(inner), threads_(threads == 0 ? 1 : threads)
{
}

std::vector<OuterEvaluation> OuterProblem::evaluate(const std::vector<UnitVector>& batch) const
{
  std::vector<OuterEvaluation> out(batch.size());
  parallel_for(batch.size(), threads_,
               [&](std::size_t i) { out[i] = evaluate_outer(*scenario_, batch[i], inner_); });
  count_ += batch.size();
  return out;
}

OuterEvaluation OuterProblem::evaluate_one(const UnitVector& unit) const
{
  ++count_;
  return evaluate_outer(*scenario_, unit, inner_);
}

}  // namespace coroute
