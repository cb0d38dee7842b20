#include "coroute/vrp_solver.hpp"

#include <algorithm>
#include <vector>

namespace coroute {

namespace {

// A target no pair of recharge vertices can serve on one tank.
bool out_of_reach(const RoutingGraph& g, int target)
{
  const int m = g.end_vertex();
  for (int a = 0; a < m; ++a)
    for (int b = 1; b <= m; ++b)
      if (g.energy(a, target) + g.energy(target, b) <= g.capacity())
        return false;
  return true;
}

// Fuel and window check that tolerates empty sorties, used while a tour is
// still being filled. Returns the travel cost, or a negative value.
double relaxed_cost(const RoutingGraph& g, const std::vector<int>& tour)
{
  constexpr double eps = 1e-6;
  const double q = g.capacity();
  const int m = g.end_vertex();
  double t = 0.0;
  double fuel = q;
  double service = 0.0;
  double cost = 0.0;
  for (std::size_t p = 1; p < tour.size(); ++p) {
    const int i = tour[p - 1];
    const int j = tour[p];
    t += service + g.cost(i, j);
    cost += g.cost(i, j);
    fuel -= g.energy(i, j);
    service = 0.0;
    if (fuel < -eps)
      return -1.0;
    const TimeWindow& w = g.vertex(j).window;
    if (g.is_intermediate_recharge(j)) {
      service = service_time(std::max(fuel, 0.0), q);
      fuel = q;
    }
    if (t < w.open - eps || t + service > w.close + eps)
      return -1.0;
    if (j == m)
      break;
  }
  return cost;
}

// Cheapest insertion of every target into a fixed recharge skeleton
// 0, d1, ..., dk, m. Empty sorties are collapsed at the end.
bool fill_skeleton(const RoutingGraph& g, std::vector<int>& tour, const std::vector<int>& order)
{
  std::vector<int> trial;
  for (int v : order) {
    double best_cost = -1.0;
    std::size_t best_pos = 0;
    for (std::size_t pos = 1; pos < tour.size(); ++pos) {
      trial = tour;
      trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), v);
      const double c = relaxed_cost(g, trial);
      if (c >= 0.0 && (best_cost < 0.0 || c < best_cost)) {
        best_cost = c;
        best_pos = pos;
      }
    }
    if (best_cost < 0.0)
      return false;
    tour.insert(tour.begin() + static_cast<std::ptrdiff_t>(best_pos), v);
  }
  std::vector<int> collapsed{tour.front()};
  for (std::size_t p = 1; p < tour.size(); ++p) {
    const int v = tour[p];
    if (g.is_intermediate_recharge(v) && g.is_recharge(collapsed.back()))
      continue;
    if (v == g.end_vertex() && g.is_intermediate_recharge(collapsed.back()))
      collapsed.pop_back();
    collapsed.push_back(v);
  }
  tour = std::move(collapsed);
  return tour_feasible(g, tour);
}

// Try every ordered subset of the intermediate recharge vertices as a
// skeleton; keep the cheapest feasible filling.
std::vector<int> insertion_construct(const RoutingGraph& g)
{
  const int m = g.end_vertex();
  std::vector<int> order;
  for (int v = g.first_target(); v < static_cast<int>(g.size()); ++v)
    order.push_back(v);
  // Hardest targets first: farthest from their nearest recharge vertex.
  const auto reach = [&](int v) {
    double best = g.cost(0, v);
    for (int d = 1; d <= m; ++d)
      best = std::min(best, g.cost(d, v));
    return best;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return reach(a) > reach(b); });

  std::vector<int> best;
  double best_cost = 0.0;
  std::vector<int> skeleton{0};
  std::vector<bool> in_use(static_cast<std::size_t>(m) + 1, false);
  const auto recurse = [&](const auto& self) -> void {
    std::vector<int> tour = skeleton;
    tour.push_back(m);
    if (fill_skeleton(g, tour, order)) {
      const double c = tour_cost(g, tour);
      if (best.empty() || c < best_cost) {
        best = tour;
        best_cost = c;
      }
    }
    for (int d = 1; d < m; ++d) {
      if (in_use[static_cast<std::size_t>(d)])
        continue;
      in_use[static_cast<std::size_t>(d)] = true;
      skeleton.push_back(d);
      self(self);
      skeleton.pop_back();
      in_use[static_cast<std::size_t>(d)] = false;
    }
  };
  recurse(recurse);
  return best;
}

struct Cursor
{
  int at = 0;
  double time = 0.0;
  double fuel = 0.0;
  double service = 0.0;
};

// Depth-first search over partial tours, nearest successor first, pruned by
// fuel and windows. Gives up after `budget` expanded nodes.
std::vector<int> search_construct(const RoutingGraph& g, std::size_t budget)
{
  const int m = g.end_vertex();
  const int n = static_cast<int>(g.size());
  const double q = g.capacity();
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> tour{0};
  std::size_t left = g.target_count();
  std::size_t expanded = 0;

  const auto dfs = [&](const auto& self, Cursor cur) -> bool {
    if (++expanded > budget)
      return false;
    const double depart = cur.time + cur.service;
    if (left == 0) {
      if (cur.fuel - g.energy(cur.at, m) >= 0.0 && depart + g.cost(cur.at, m) <= g.vertex(m).window.close) {
        tour.push_back(m);
        return true;
      }
    }
    std::vector<int> next;
    for (int v = g.first_target(); v < n; ++v)
      if (!used[static_cast<std::size_t>(v)])
        next.push_back(v);
    if (!g.is_recharge(cur.at))
      for (int d = 1; d < m; ++d)
        if (!used[static_cast<std::size_t>(d)])
          next.push_back(d);
    std::stable_sort(next.begin(), next.end(),
                     [&](int a, int b) { return g.cost(cur.at, a) < g.cost(cur.at, b); });

    for (int v : next) {
      const double fuel = cur.fuel - g.energy(cur.at, v);
      const double at = depart + g.cost(cur.at, v);
      const TimeWindow& w = g.vertex(v).window;
      if (fuel < 0.0 || at < w.open || at > w.close)
        continue;
      Cursor step{v, at, fuel, 0.0};
      const bool target = v >= g.first_target();
      if (!target) {
        step.service = service_time(fuel, q);
        step.fuel = q;
        if (at + step.service > w.close)
          continue;
      }
      used[static_cast<std::size_t>(v)] = true;
      tour.push_back(v);
      if (target)
        --left;
      if (self(self, step))
        return true;
      if (target)
        ++left;
      tour.pop_back();
      used[static_cast<std::size_t>(v)] = false;
      if (expanded > budget)
        return false;
    }
    return false;
  };
  if (dfs(dfs, Cursor{0, 0.0, q, 0.0}) && tour_feasible(g, tour))
    return tour;
  return {};
}

constexpr std::size_t kSearchBudget = 200'000;

}  // namespace

ConstructResult construct_initial(const RoutingGraph& g)
{
  ConstructResult result;
  if (g.target_count() == 0)
    return result;

  for (int v = g.first_target(); v < static_cast<int>(g.size()); ++v)
    if (out_of_reach(g, v))
      result.unreachable.push_back(v);
  if (!result.ok())
    return result;

  const int m = g.end_vertex();
  const double q = g.capacity();
  std::vector<bool> used(g.size(), false);
  std::vector<int> remaining;
  for (int v = g.first_target(); v < static_cast<int>(g.size()); ++v)
    remaining.push_back(v);

  Cursor cur{0, 0.0, q, 0.0};
  std::vector<int> tour{0};

  // Arrival at recharge vertex d from `from` with `fuel` left at time `t`:
  // can the UAV land and finish recharging inside the window?
  const auto recharge_ok = [&](int from, double fuel, double t, int d) {
    const double arrival = fuel - g.energy(from, d);
    if (arrival < 0.0)
      return false;
    const double at = t + g.cost(from, d);
    const TimeWindow& w = g.vertex(d).window;
    return at >= w.open && at + service_time(arrival, q) <= w.close;
  };
  const auto end_ok = [&](int from, double fuel, double t) {
    return fuel - g.energy(from, m) >= 0.0 && t + g.cost(from, m) <= g.vertex(m).window.close;
  };
  const auto has_exit = [&](int from, double fuel, double t) {
    if (end_ok(from, fuel, t))
      return true;
    for (int d = 1; d < m; ++d)
      if (!used[static_cast<std::size_t>(d)] && recharge_ok(from, fuel, t, d))
        return true;
    return false;
  };

  while (true) {
    if (remaining.empty()) {
      if (end_ok(cur.at, cur.fuel, cur.time + cur.service)) {
        tour.push_back(m);
        break;
      }
      // Cannot close the route from here; the last target is the culprit.
      result.unreachable.push_back(cur.at);
      break;
    }

    int best = -1;
    for (int j : remaining) {
      const double fuel = cur.fuel - g.energy(cur.at, j);
      const double t = cur.time + cur.service + g.cost(cur.at, j);
      if (fuel < 0.0 || t > g.vertex(j).window.close)
        continue;
      const bool exit = remaining.size() == 1 ? end_ok(j, fuel, t) : has_exit(j, fuel, t);
      if (!exit)
        continue;
      if (best < 0 || g.cost(cur.at, j) < g.cost(cur.at, best))
        best = j;
    }

    if (best >= 0) {
      cur.fuel -= g.energy(cur.at, best);
      cur.time += cur.service + g.cost(cur.at, best);
      cur.service = 0.0;
      cur.at = best;
      tour.push_back(best);
      remaining.erase(std::find(remaining.begin(), remaining.end(), best));
      continue;
    }

    int depot = -1;
    if (!g.is_recharge(cur.at)) {
      for (int d = 1; d < m; ++d) {
        if (used[static_cast<std::size_t>(d)] || !recharge_ok(cur.at, cur.fuel, cur.time + cur.service, d))
          continue;
        if (depot < 0 || g.cost(cur.at, d) < g.cost(cur.at, depot))
          depot = d;
      }
    }
    if (depot < 0) {
      result.unreachable = remaining;
      break;
    }
    const double arrival = cur.fuel - g.energy(cur.at, depot);
    cur.time += cur.service + g.cost(cur.at, depot);
    cur.service = service_time(arrival, q);
    cur.fuel = q;
    cur.at = depot;
    used[static_cast<std::size_t>(depot)] = true;
    tour.push_back(depot);
  }

  if (!result.ok()) {
    std::vector<int> fallback = insertion_construct(g);
    if (fallback.empty())
      fallback = search_construct(g, kSearchBudget);
    if (!fallback.empty()) {
      result.unreachable.clear();
      tour = std::move(fallback);
    }
  }
  if (result.ok()) {
    result.plan.tour = std::move(tour);
    propagate(g, result.plan);
  }
  return result;
}

}  // namespace coroute
