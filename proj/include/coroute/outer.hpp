#pragma once

#include "coroute/routing.hpp"
#include "coroute/scenario.hpp"
#include "coroute/ugv.hpp"
#include "coroute/vrp_solver.hpp"

#include <atomic>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace coroute {

/// Gap between the two completion times, minutes.
double outer_objective(double ugv_total_min, double uav_total_min);

/// Ranking value for an infeasible parameter set, minutes.
double infeasible_fitness(const Scenario& scenario, std::size_t uncovered);

/// One outer evaluation: decode, build the UGV route, solve the UAV routing
/// problem and score the pair.
struct OuterEvaluation
{
  UnitVector unit{};
  UgvParams params;
  bool feasible = false;
  double fitness = 0.0;  // minutes
  double ugv_min = 0.0;
  double uav_min = 0.0;
  std::size_t uncovered = 0;  // targets neither vehicle reaches
  std::string failure;        // empty when feasible
  std::vector<int> tour;      // UAV tour of the inner solution
};

OuterEvaluation evaluate_outer(const Scenario& scenario, const UnitVector& unit,
                               const GlsOptions& inner);

/// Everything needed to report one parameter set.
struct OuterDetail
{
  UgvRoute route;
  RoutingGraph graph;
  UavPlan plan;
};

/// Rebuilds the route and graph for `params` and propagates `tour` on it.
OuterDetail rebuild_outer(const Scenario& scenario, const UgvParams& params,
                          const std::vector<int>& tour);

/// Batch evaluator over a fixed scenario. Evaluations within a batch run on
/// up to `threads` workers; results keep the input order.
class OuterProblem
{
public:
  OuterProblem(const Scenario& scenario, GlsOptions inner, unsigned threads);

  std::vector<OuterEvaluation> evaluate(const std::vector<UnitVector>& batch) const;
  OuterEvaluation evaluate_one(const UnitVector& unit) const;

  const Scenario& scenario() const { return *scenario_; }
  unsigned threads() const { return threads_; }
  std::size_t evaluations() const { return count_.load(); }

private:
  const Scenario* scenario_;
  GlsOptions inner_;
  unsigned threads_;
  mutable std::atomic<std::size_t> count_{0};
};

}  // namespace coroute
