#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace coroute::nm {

using Point = std::vector<double>;
using Objective = std::function<double(std::span<const double>)>;

struct Box
{
  Point lower;
  Point upper;

  std::size_t dims() const { return lower.size(); }
  bool contains(std::span<const double> x) const;
  Point clamp(Point x) const;
  static Box unit(std::size_t dims);
};

struct NmConfig
{
  double alpha = 1.0;  // reflection
  double beta = 2.0;   // expansion
  double gamma = 0.5;  // contraction
  double delta = 0.5;  // shrink
  double init_scale = 0.1;
  std::size_t max_iters = 200;
  double diameter_tol = 1e-8;

  /// Throws std::invalid_argument unless alpha > 0, beta > 1, 0 < gamma < 1
  /// and 0 < delta < 1.
  void validate() const;
};

enum class StepKind { reflect, expand, outside_contract, inside_contract, shrink };

struct SimplexState
{
  std::vector<Point> vertices;  // ascending by value
  std::vector<double> values;
  std::size_t evaluations = 0;
  StepKind last_step = StepKind::reflect;

  const Point& best() const { return vertices.front(); }
  double best_value() const { return values.front(); }
  /// Largest pairwise Euclidean distance between vertices.
  double diameter() const;
};

/// Vertex 0 is x0; vertex i steps init_scale of the range along axis i.
/// An axis whose step clamps to nothing is re-drawn inward at half scale.
/// Throws std::invalid_argument when x0 lies outside the box.
SimplexState nm_init(const Point& x0, const Box& box, const NmConfig& config,
                     const Objective& objective);

/// One reflection/expansion/contraction/shrink step; candidates are clamped
/// to the box before evaluation. Objective exceptions count as +infinity.
void nm_step(SimplexState& state, const Box& box, const NmConfig& config,
             const Objective& objective);

struct NmResult
{
  Point best;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  SimplexState final_state;
};

/// Step until the diameter drops below diameter_tol or max_iters is reached.
NmResult nm_optimize(const Objective& objective, const Point& x0, const Box& box,
                     const NmConfig& config);

}  // namespace coroute::nm
