#pragma once

#include <cstddef>
#include <vector>

namespace coroute {

/// Planar point in meters.
struct Point2D
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

double distance(Point2D a, Point2D b);

/// Shortest distance from p to the segment [a, b].
double distance_to_segment(Point2D p, Point2D a, Point2D b);

struct Projection
{
  double arclength = 0.0;
  double distance = 0.0;
};

/// Piecewise-linear curve with cached cumulative arclength.
class Polyline
{
public:
  Polyline() = default;
  explicit Polyline(std::vector<Point2D> points);

  const std::vector<Point2D>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  double length() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }

  /// Arclength at vertex i.
  double arclength_at(std::size_t i) const { return cumulative_[i]; }

  /// Point at arclength s, clamped to [0, length()].
  Point2D point_at(double s) const;

  /// Closest point on the curve to p (lowest arclength wins ties).
  Projection project(Point2D p) const;

  /// Distance from p to the curve.
  double distance_to(Point2D p) const { return project(p).distance; }

  /// The piece of the curve between two arclengths, traversed from `from` to
  /// `to` (reversed when to < from). Always holds at least one point.
  std::vector<Point2D> between(double from, double to) const;

private:
  std::vector<Point2D> points_;
  std::vector<double> cumulative_;
};

}  // namespace coroute
