#pragma once

#include "coroute/routing.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace coroute {

struct ConstructResult
{
  UavPlan plan;
  std::vector<int> unreachable;  // target vertices the greedy could not place
  bool ok() const { return unreachable.empty(); }
};

/// Path-cheapest-arc construction: from the start, repeatedly append the
/// cheapest unvisited target that still leaves a way out (a usable recharge
/// vertex or the end); when none remains, recharge at the cheapest usable
/// recharge vertex. Ties go to the lowest vertex index. When the greedy
/// strands targets, cheapest insertion into every ordered recharge skeleton
/// is tried before reporting failure.
ConstructResult construct_initial(const RoutingGraph& graph);

enum class MoveOperator { two_opt, or_opt, relocate, exchange, cross };

inline constexpr std::array<MoveOperator, 5> kMoveOrder = {
    MoveOperator::two_opt, MoveOperator::or_opt, MoveOperator::relocate,
    MoveOperator::exchange, MoveOperator::cross};

const char* to_string(MoveOperator op);

/// Longest block Or-opt moves.
inline constexpr std::size_t kOrOptMaxBlock = 3;

/// Enumerate every tour one application of `op` reaches from `tour`, in a
/// fixed order. The callback returns false to stop early. Candidates are not
/// checked for feasibility.
///
/// 2-opt and Or-opt work inside one sortie. Relocate moves a target into
/// another sortie, inserts an unused recharge vertex between two targets or
/// drops an intermediate one. Exchange swaps two targets anywhere or replaces
/// a used recharge vertex with an unused one. Cross swaps the tail segments
/// of two sorties.
void for_each_neighbor(const RoutingGraph& graph, std::span<const int> tour, MoveOperator op,
                       const std::function<bool(const std::vector<int>&)>& visit);

/// Materialized neighborhood, for tests and diagnostics.
std::vector<UavPlan> neighborhood(const RoutingGraph& graph, const UavPlan& plan, MoveOperator op);

/// Arc-penalty memory. Features are undirected arcs with cost c_ij.
class GlsState
{
public:
  GlsState(const RoutingGraph& graph, double lambda);

  double lambda() const { return lambda_; }
  int penalty(int i, int j) const;
  void add_penalty(int i, int j, int count = 1);

  /// cost + lambda * sum(p_ij * c_ij) over the arcs of the tour.
  double augmented_cost(std::span<const int> tour) const;

  /// Increment every arc of the tour that maximizes c_ij / (1 + p_ij).
  /// Returns the number of arcs penalized.
  std::size_t penalize_local_optimum(std::span<const int> tour);

private:
  const RoutingGraph* graph_;
  double lambda_;
  std::vector<int> penalties_;
};

struct GlsOptions
{
  double lambda = 0.1;
  std::size_t max_evaluations = 20'000;
  double time_limit_s = 2.0;  // <= 0 disables the wall-clock cap
};

struct InnerResult
{
  UavPlan plan;  // propagated; best by true cost
  std::vector<int> unreachable;
  double initial_cost = 0.0;
  std::size_t evaluations = 0;
  std::size_t local_optima = 0;
  bool ok() const { return unreachable.empty(); }
};

/// Best-improvement descent over the five neighborhoods on the true cost.
InnerResult local_search(const RoutingGraph& graph, const GlsOptions& options);

/// Guided local search: descend on the augmented cost, penalize the
/// highest-utility arcs at every local optimum, repeat until the budget runs
/// out; returns the cheapest feasible plan seen.
InnerResult guided_local_search(const RoutingGraph& graph, const GlsOptions& options);

}  // namespace coroute
