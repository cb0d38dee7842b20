#include "coroute/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace coroute {

double distance(Point2D a, Point2D b)
{
  return std::hypot(a.x - b.x, a.y - b.y);
}

namespace {

// Parameter t in [0,1] of the closest point on [a, b] to p.
double closest_t(Point2D p, Point2D a, Point2D b)
{
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0)
    return 0.0;
  const double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  return std::clamp(t, 0.0, 1.0);
}

Point2D lerp(Point2D a, Point2D b, double t)
{
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace

double distance_to_segment(Point2D p, Point2D a, Point2D b)
{
  return distance(p, lerp(a, b, closest_t(p, a, b)));
}

Polyline::Polyline(std::vector<Point2D> points) : points_(std::move(points))
{
  cumulative_.reserve(points_.size());
  double s = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i > 0)
      s += distance(points_[i - 1], points_[i]);
    cumulative_.push_back(s);
  }
}

Point2D Polyline::point_at(double s) const
{
  if (points_.empty())
    return {};
  if (s <= 0.0)
    return points_.front();
  if (s >= length())
    return points_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), s);
  const std::size_t hi = static_cast<std::size_t>(it - cumulative_.begin());
  const std::size_t lo = hi - 1;
  const double seg = cumulative_[hi] - cumulative_[lo];
  const double t = seg > 0.0 ? (s - cumulative_[lo]) / seg : 0.0;
  return lerp(points_[lo], points_[hi], t);
}

Projection Polyline::project(Point2D p) const
{
  Projection best{0.0, std::numeric_limits<double>::infinity()};
  if (points_.size() == 1)
    return {0.0, distance(p, points_.front())};
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const double t = closest_t(p, points_[i], points_[i + 1]);
    const double d = distance(p, lerp(points_[i], points_[i + 1], t));
    if (d < best.distance) {
      best.distance = d;
      best.arclength = cumulative_[i] + t * (cumulative_[i + 1] - cumulative_[i]);
    }
  }
  return best;
}

std::vector<Point2D> Polyline::between(double from, double to) const
{
  const double lo = std::clamp(std::min(from, to), 0.0, length());
  const double hi = std::clamp(std::max(from, to), 0.0, length());
  std::vector<Point2D> out;
  out.push_back(point_at(lo));
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (cumulative_[i] > lo && cumulative_[i] < hi)
      out.push_back(points_[i]);
  }
  if (hi > lo)
    out.push_back(point_at(hi));
  if (to < from)
    std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace coroute
