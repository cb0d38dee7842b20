#include "coroute/vrp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace coroute {

GlsState::GlsState(const RoutingGraph& graph, double lambda)
    : graph_(&graph), lambda_(lambda), penalties_(graph.size() * graph.size(), 0)
{
}

int GlsState::penalty(int i, int j) const
{
  return penalties_[static_cast<std::size_t>(i) * graph_->size() + static_cast<std::size_t>(j)];
}

void GlsState::add_penalty(int i, int j, int count)
{
  const std::size_t n = graph_->size();
  penalties_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] += count;
  if (i != j)
    penalties_[static_cast<std::size_t>(j) * n + static_cast<std::size_t>(i)] += count;
}

double GlsState::augmented_cost(std::span<const int> tour) const
{
  double cost = 0.0;
  double penalty_term = 0.0;
  for (std::size_t p = 1; p < tour.size(); ++p) {
    const double c = graph_->cost(tour[p - 1], tour[p]);
    cost += c;
    penalty_term += penalty(tour[p - 1], tour[p]) * c;
  }
  return cost + lambda_ * penalty_term;
}

std::size_t GlsState::penalize_local_optimum(std::span<const int> tour)
{
  double best = -1.0;
  for (std::size_t p = 1; p < tour.size(); ++p) {
    const double u = graph_->cost(tour[p - 1], tour[p]) / (1.0 + penalty(tour[p - 1], tour[p]));
    best = std::max(best, u);
  }
  // Collect first so an arc repeated in the tour is only penalized once.
  std::vector<std::pair<int, int>> arcs;
  for (std::size_t p = 1; p < tour.size(); ++p) {
    const int i = std::min(tour[p - 1], tour[p]);
    const int j = std::max(tour[p - 1], tour[p]);
    const double u = graph_->cost(i, j) / (1.0 + penalty(i, j));
    if (u >= best && std::find(arcs.begin(), arcs.end(), std::pair{i, j}) == arcs.end())
      arcs.emplace_back(i, j);
  }
  for (auto [i, j] : arcs)
    add_penalty(i, j);
  return arcs.size();
}

namespace {

bool improves(double candidate, double incumbent)
{
  return candidate < incumbent - 1e-9 * std::max(1.0, std::abs(incumbent));
}

class Search
{
public:
  Search(const RoutingGraph& g, const GlsOptions& o)
      : g_(g), opts_(o), start_(std::chrono::steady_clock::now())
  {
  }

  // Descend from `tour` on the state's augmented cost until no neighborhood
  // improves it. Returns false when the budget ran out.
  bool descend(std::vector<int>& tour, const GlsState& state)
  {
    double current = state.augmented_cost(tour);
    std::vector<int> best_cand;
    while (true) {
      bool moved = false;
      for (MoveOperator op : kMoveOrder) {
        double best_aug = current;
        best_cand.clear();
        for_each_neighbor(g_, tour, op, [&](const std::vector<int>& cand) {
          if (!charge())
            return false;
          const double aug = state.augmented_cost(cand);
          const double cost = state.lambda() == 0.0 ? aug : tour_cost(g_, cand);
          const bool better_aug = improves(aug, best_aug);
          const bool better_true = improves(cost, best_cost_);
          if ((better_aug || better_true) && tour_feasible(g_, cand)) {
            if (better_true) {
              best_cost_ = cost;
              best_tour_ = cand;
            }
            if (better_aug) {
              best_aug = aug;
              best_cand = cand;
            }
          }
          return true;
        });
        if (!best_cand.empty()) {
          tour = best_cand;
          current = best_aug;
          moved = true;
        }
        if (exhausted_)
          return false;
      }
      if (!moved)
        return true;
    }
  }

  void offer(const std::vector<int>& tour, double cost)
  {
    if (best_tour_.empty() || improves(cost, best_cost_)) {
      best_cost_ = cost;
      best_tour_ = tour;
    }
  }

  const std::vector<int>& best_tour() const { return best_tour_; }
  std::size_t evaluations() const { return evaluations_; }
  bool exhausted() const { return exhausted_; }

private:
  bool charge()
  {
    if (exhausted_)
      return false;
    if (evaluations_ >= opts_.max_evaluations) {
      exhausted_ = true;
      return false;
    }
    ++evaluations_;
    if (opts_.time_limit_s > 0.0 && (evaluations_ & 255u) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > opts_.time_limit_s) {
        exhausted_ = true;
        return false;
      }
    }
    return true;
  }

  const RoutingGraph& g_;
  GlsOptions opts_;
  std::chrono::steady_clock::time_point start_;
  std::size_t evaluations_ = 0;
  bool exhausted_ = false;
  std::vector<int> best_tour_;
  double best_cost_ = 0.0;
};

InnerResult run(const RoutingGraph& g, const GlsOptions& opts, double lambda)
{
  InnerResult result;
  ConstructResult init = construct_initial(g);
  if (!init.ok()) {
    result.unreachable = std::move(init.unreachable);
    return result;
  }
  result.initial_cost = init.plan.cost;
  if (init.plan.empty()) {
    result.plan = std::move(init.plan);
    return result;
  }

  Search search(g, opts);
  search.offer(init.plan.tour, init.plan.cost);
  GlsState state(g, lambda);
  std::vector<int> tour = init.plan.tour;
  while (true) {
    const std::size_t before = search.evaluations();
    const bool converged = search.descend(tour, state);
    if (!converged)
      break;
    ++result.local_optima;
    // An empty neighborhood never spends budget, so penalties cannot help.
    if (lambda == 0.0 || search.evaluations() == before)
      break;
    state.penalize_local_optimum(tour);
  }

  result.evaluations = search.evaluations();
  result.plan.tour = search.best_tour();
  propagate(g, result.plan);
  return result;
}

}  // namespace

InnerResult local_search(const RoutingGraph& graph, const GlsOptions& options)
{
  return run(graph, options, 0.0);
}

InnerResult guided_local_search(const RoutingGraph& graph, const GlsOptions& options)
{
  return run(graph, options, options.lambda);
}

}  // namespace coroute
