#include "coroute/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace coroute::nm {

bool Box::contains(std::span<const double> x) const
{
  if (x.size() != dims())
    return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] >= lower[i] && x[i] <= upper[i]))
      return false;
  return true;
}

Point Box::clamp(Point x) const
{
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = std::clamp(x[i], lower[i], upper[i]);
  return x;
}

Box Box::unit(std::size_t dims)
{
  return {Point(dims, 0.0), Point(dims, 1.0)};
}

void NmConfig::validate() const
{
  if (!(alpha > 0.0) || !(beta > 1.0) || !(gamma > 0.0 && gamma < 1.0) ||
      !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument(
        "NmConfig: need alpha > 0, beta > 1, 0 < gamma < 1, 0 < delta < 1");
}

double SimplexState::diameter() const
{
  double d = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < vertices[i].size(); ++k) {
        const double diff = vertices[i][k] - vertices[j][k];
        s += diff * diff;
      }
      d = std::max(d, std::sqrt(s));
    }
  return d;
}

namespace {

double safe_eval(const Objective& f, const Point& x, SimplexState& state)
{
  ++state.evaluations;
  try {
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  } catch (...) {
    return std::numeric_limits<double>::infinity();
  }
}

void sort_state(SimplexState& s)
{
  std::vector<std::size_t> order(s.vertices.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
  std::vector<Point> v;
  std::vector<double> f;
  for (std::size_t i : order) {
    v.push_back(std::move(s.vertices[i]));
    f.push_back(s.values[i]);
  }
  s.vertices = std::move(v);
  s.values = std::move(f);
}

// base + t * dir
Point along(const Point& base, const Point& dir, double t)
{
  Point out(base.size());
  for (std::size_t i = 0; i < base.size(); ++i)
    out[i] = base[i] + t * dir[i];
  return out;
}

}  // namespace

SimplexState nm_init(const Point& x0, const Box& box, const NmConfig& config,
                     const Objective& objective)
{
  config.validate();
  if (!box.contains(x0))
    throw std::invalid_argument("nm_init: x0 outside the box");
  SimplexState s;
  s.vertices.push_back(x0);
  for (std::size_t i = 0; i < x0.size(); ++i) {
    const double range = box.upper[i] - box.lower[i];
    Point v = x0;
    v[i] = std::clamp(x0[i] + config.init_scale * range, box.lower[i], box.upper[i]);
    if (v[i] == x0[i])
      v[i] = std::clamp(x0[i] - 0.5 * config.init_scale * range, box.lower[i], box.upper[i]);
    s.vertices.push_back(std::move(v));
  }
  for (const Point& v : s.vertices)
    s.values.push_back(safe_eval(objective, v, s));
  sort_state(s);
  return s;
}

void nm_step(SimplexState& s, const Box& box, const NmConfig& c, const Objective& objective)
{
  const std::size_t n = s.vertices.size() - 1;
  const std::size_t worst = n;

  Point centroid(s.vertices[0].size(), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < centroid.size(); ++k)
      centroid[k] += s.vertices[i][k] / static_cast<double>(n);

  // Reflection direction r - centroid, before clamping.
  Point dir(centroid.size());
  for (std::size_t k = 0; k < dir.size(); ++k)
    dir[k] = c.alpha * (centroid[k] - s.vertices[worst][k]);

  const Point xr = box.clamp(along(centroid, dir, 1.0));
  const double fr = safe_eval(objective, xr, s);
  const double f1 = s.values.front();
  const double fn = s.values[n - 1];
  const double fworst = s.values[worst];

  const auto replace_worst = [&](Point x, double f, StepKind kind) {
    s.vertices[worst] = std::move(x);
    s.values[worst] = f;
    s.last_step = kind;
  };
  const auto shrink = [&] {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t k = 0; k < centroid.size(); ++k)
        s.vertices[i][k] = s.vertices[0][k] + c.delta * (s.vertices[i][k] - s.vertices[0][k]);
      s.values[i] = safe_eval(objective, s.vertices[i], s);
    }
    s.last_step = StepKind::shrink;
  };

  if (f1 <= fr && fr < fn) {
    replace_worst(xr, fr, StepKind::reflect);
  } else if (fr < f1) {
    const Point xe = box.clamp(along(centroid, dir, c.beta));
    const double fe = safe_eval(objective, xe, s);
    if (fe < fr)
      replace_worst(xe, fe, StepKind::expand);
    else
      replace_worst(xr, fr, StepKind::reflect);
  } else if (fn <= fr && fr < fworst) {
    const Point xoc = box.clamp(along(centroid, dir, c.gamma));
    const double foc = safe_eval(objective, xoc, s);
    if (foc <= fr)
      replace_worst(xoc, foc, StepKind::outside_contract);
    else
      shrink();
  } else {
    const Point xic = box.clamp(along(centroid, dir, -c.gamma));
    const double fic = safe_eval(objective, xic, s);
    if (fic < fworst)
      replace_worst(xic, fic, StepKind::inside_contract);
    else
      shrink();
  }
  sort_state(s);
}

NmResult nm_optimize(const Objective& objective, const Point& x0, const Box& box,
                     const NmConfig& config)
{
  NmResult r;
  SimplexState s = nm_init(x0, box, config, objective);
  while (r.iterations < config.max_iters && s.diameter() >= config.diameter_tol) {
    nm_step(s, box, config, objective);
    ++r.iterations;
  }
  r.best = s.best();
  r.value = s.best_value();
  r.evaluations = s.evaluations;
  r.final_state = std::move(s);
  return r;
}

}  // namespace coroute::nm
