#include "coroute/vrp_solver.hpp"

#include <algorithm>

namespace coroute {

const char* to_string(MoveOperator op)
{
  switch (op) {
  case MoveOperator::two_opt: return "2-opt";
  case MoveOperator::or_opt: return "or-opt";
  case MoveOperator::relocate: return "relocate";
  case MoveOperator::exchange: return "exchange";
  case MoveOperator::cross: return "cross";
  }
  return "?";
}

namespace {

using Visit = std::function<bool(const std::vector<int>&)>;

// Positions of recharge vertices; sortie s spans [bounds[s], bounds[s+1]].
std::vector<std::size_t> sortie_bounds(const RoutingGraph& g, std::span<const int> tour)
{
  std::vector<std::size_t> b;
  for (std::size_t p = 0; p < tour.size(); ++p)
    if (g.is_recharge(tour[p]))
      b.push_back(p);
  return b;
}

bool two_opt(std::span<const int> tour, const std::vector<std::size_t>& b, const Visit& visit)
{
  std::vector<int> cand;
  for (std::size_t s = 0; s + 1 < b.size(); ++s) {
    for (std::size_t i = b[s] + 1; i < b[s + 1]; ++i) {
      for (std::size_t j = i + 1; j < b[s + 1]; ++j) {
        cand.assign(tour.begin(), tour.end());
        std::reverse(cand.begin() + static_cast<std::ptrdiff_t>(i),
                     cand.begin() + static_cast<std::ptrdiff_t>(j) + 1);
        if (!visit(cand))
          return false;
      }
    }
  }
  return true;
}

// Move tour[i, i+len) so it lands in front of original position `before`.
void move_block(std::span<const int> tour, std::size_t i, std::size_t len, std::size_t before,
                std::vector<int>& out)
{
  out.clear();
  const std::size_t n = tour.size();
  for (std::size_t p = 0; p <= n; ++p) {
    if (p == before)
      out.insert(out.end(), tour.begin() + static_cast<std::ptrdiff_t>(i),
                 tour.begin() + static_cast<std::ptrdiff_t>(i + len));
    if (p < n && (p < i || p >= i + len))
      out.push_back(tour[p]);
  }
}

bool or_opt(std::span<const int> tour, const std::vector<std::size_t>& b, const Visit& visit)
{
  std::vector<int> cand;
  for (std::size_t s = 0; s + 1 < b.size(); ++s) {
    const std::size_t lo = b[s] + 1;
    const std::size_t hi = b[s + 1];  // one past the last interior position
    for (std::size_t len = 1; len <= kOrOptMaxBlock; ++len) {
      for (std::size_t i = lo; i + len <= hi; ++i) {
        for (std::size_t before = lo; before <= hi; ++before) {
          if (before >= i && before <= i + len)
            continue;
          move_block(tour, i, len, before, cand);
          if (!visit(cand))
            return false;
        }
      }
    }
  }
  return true;
}

bool relocate(const RoutingGraph& g, std::span<const int> tour, const std::vector<std::size_t>& b,
              const Visit& visit)
{
  std::vector<int> cand;
  // Targets into another sortie.
  for (std::size_t s = 0; s + 1 < b.size(); ++s) {
    for (std::size_t i = b[s] + 1; i < b[s + 1]; ++i) {
      for (std::size_t t = 0; t + 1 < b.size(); ++t) {
        if (t == s)
          continue;
        for (std::size_t before = b[t] + 1; before <= b[t + 1]; ++before) {
          move_block(tour, i, 1, before, cand);
          if (!visit(cand))
            return false;
        }
      }
    }
  }
  // Unused recharge vertex between two targets.
  std::vector<bool> used(g.size(), false);
  for (int v : tour)
    used[static_cast<std::size_t>(v)] = true;
  for (int d = 1; d < g.end_vertex(); ++d) {
    if (used[static_cast<std::size_t>(d)])
      continue;
    for (std::size_t p = 1; p < tour.size(); ++p) {
      if (!g.is_target(tour[p - 1]) || !g.is_target(tour[p]))
        continue;
      cand.assign(tour.begin(), tour.end());
      cand.insert(cand.begin() + static_cast<std::ptrdiff_t>(p), d);
      if (!visit(cand))
        return false;
    }
  }
  // Drop an intermediate recharge, merging two sorties.
  for (std::size_t k = 1; k + 1 < b.size(); ++k) {
    cand.assign(tour.begin(), tour.end());
    cand.erase(cand.begin() + static_cast<std::ptrdiff_t>(b[k]));
    if (!visit(cand))
      return false;
  }
  return true;
}

bool exchange(const RoutingGraph& g, std::span<const int> tour, const std::vector<std::size_t>& b,
              const Visit& visit)
{
  std::vector<int> cand;
  for (std::size_t i = 1; i + 1 < tour.size(); ++i) {
    if (!g.is_target(tour[i]))
      continue;
    for (std::size_t j = i + 1; j + 1 < tour.size(); ++j) {
      if (!g.is_target(tour[j]))
        continue;
      cand.assign(tour.begin(), tour.end());
      std::swap(cand[i], cand[j]);
      if (!visit(cand))
        return false;
    }
  }
  std::vector<bool> used(g.size(), false);
  for (int v : tour)
    used[static_cast<std::size_t>(v)] = true;
  for (std::size_t k = 1; k + 1 < b.size(); ++k) {
    for (int d = 1; d < g.end_vertex(); ++d) {
      if (used[static_cast<std::size_t>(d)])
        continue;
      cand.assign(tour.begin(), tour.end());
      cand[b[k]] = d;
      if (!visit(cand))
        return false;
    }
  }
  return true;
}

bool cross(std::span<const int> tour, const std::vector<std::size_t>& b, const Visit& visit)
{
  std::vector<int> cand;
  const auto at = [&](std::size_t p) { return tour.begin() + static_cast<std::ptrdiff_t>(p); };
  for (std::size_t s = 0; s + 1 < b.size(); ++s) {
    const std::size_t len_s = b[s + 1] - b[s] - 1;
    for (std::size_t t = s + 1; t + 1 < b.size(); ++t) {
      const std::size_t len_t = b[t + 1] - b[t] - 1;
      for (std::size_t a = 1; a <= len_s; ++a) {
        for (std::size_t c = 1; c <= len_t; ++c) {
          const std::size_t tail_s = b[s + 1] - a;
          const std::size_t tail_t = b[t + 1] - c;
          cand.assign(tour.begin(), at(tail_s));
          cand.insert(cand.end(), at(tail_t), at(b[t + 1]));
          cand.insert(cand.end(), at(b[s + 1]), at(tail_t));
          cand.insert(cand.end(), at(tail_s), at(b[s + 1]));
          cand.insert(cand.end(), at(b[t + 1]), tour.end());
          if (!visit(cand))
            return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

void for_each_neighbor(const RoutingGraph& graph, std::span<const int> tour, MoveOperator op,
                       const std::function<bool(const std::vector<int>&)>& visit)
{
  if (tour.size() < 3)
    return;
  const auto b = sortie_bounds(graph, tour);
  switch (op) {
  case MoveOperator::two_opt: two_opt(tour, b, visit); break;
  case MoveOperator::or_opt: or_opt(tour, b, visit); break;
  case MoveOperator::relocate: relocate(graph, tour, b, visit); break;
  case MoveOperator::exchange: exchange(graph, tour, b, visit); break;
  case MoveOperator::cross: cross(tour, b, visit); break;
  }
}

std::vector<UavPlan> neighborhood(const RoutingGraph& graph, const UavPlan& plan, MoveOperator op)
{
  std::vector<UavPlan> out;
  for_each_neighbor(graph, plan.tour, op, [&](const std::vector<int>& cand) {
    UavPlan p;
    p.tour = cand;
    p.cost = tour_cost(graph, cand);
    out.push_back(std::move(p));
    return true;
  });
  return out;
}

}  // namespace coroute
