#include "coroute/nelder_mead.hpp"
#include "coroute/ugv.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

using namespace coroute::nm;

namespace {

double sphere(std::span<const double> x)
{
  double s = 0.0;
  for (double u : x)
    s += (u - 0.5) * (u - 0.5);
  return s;
}

double square(std::span<const double> x) { return x[0] * x[0]; }

SimplexState manual(std::vector<Point> vertices, const Objective& f)
{
  SimplexState s;
  s.vertices = std::move(vertices);
  for (const Point& v : s.vertices)
    s.values.push_back(f(v));
  return s;
}

}  // namespace

TEST(NmConfig, Validation)
{
  NmConfig c;
  EXPECT_NO_THROW(c.validate());
  c.beta = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = NmConfig{};
  c.gamma = 1.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = NmConfig{};
  c.delta = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = NmConfig{};
  c.alpha = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(NmInit, AxisOffsetsInUnitSquare)
{
  const Objective flat = [](std::span<const double>) { return 0.0; };
  const SimplexState s = nm_init({0.5, 0.5}, Box::unit(2), NmConfig{}, flat);
  ASSERT_EQ(s.vertices.size(), 3u);
  EXPECT_EQ(s.vertices[0], (Point{0.5, 0.5}));
  EXPECT_NEAR(s.vertices[1][0], 0.6, 1e-15);
  EXPECT_EQ(s.vertices[1][1], 0.5);
  EXPECT_EQ(s.vertices[2][0], 0.5);
  EXPECT_NEAR(s.vertices[2][1], 0.6, 1e-15);
  EXPECT_EQ(s.evaluations, 3u);
}

TEST(NmInit, CornerRedrawsInwardAtHalfScale)
{
  const Objective flat = [](std::span<const double>) { return 0.0; };
  const SimplexState s = nm_init({1.0, 1.0}, Box::unit(2), NmConfig{}, flat);
  EXPECT_EQ(s.vertices[1], (Point{0.95, 1.0}));
  EXPECT_EQ(s.vertices[2], (Point{1.0, 0.95}));
}

TEST(NmInit, SixDimensionsGiveSevenVertices)
{
  const SimplexState s = nm_init(Point(6, 0.3), Box::unit(6), NmConfig{}, sphere);
  EXPECT_EQ(s.vertices.size(), 7u);
  for (std::size_t i = 1; i < s.values.size(); ++i)
    EXPECT_LE(s.values[i - 1], s.values[i]);
}

TEST(NmInit, RejectsPointOutsideBox)
{
  EXPECT_THROW(nm_init({1.5, 0.5}, Box::unit(2), NmConfig{}, sphere), std::invalid_argument);
  EXPECT_THROW(nm_init({0.5}, Box::unit(2), NmConfig{}, sphere), std::invalid_argument);
}

TEST(NmStep, OneDimensionalHandTrace)
{
  // x_bar = 1, x_r = 0 beats the best, x_e = -1 does not beat x_r.
  const Box box{{-10.0}, {10.0}};
  SimplexState s = manual({{1.0}, {2.0}}, square);
  nm_step(s, box, NmConfig{}, square);
  EXPECT_EQ(s.last_step, StepKind::reflect);
  EXPECT_EQ(s.vertices[0], Point{0.0});
  EXPECT_EQ(s.values[0], 0.0);
  EXPECT_EQ(s.vertices[1], Point{1.0});
  EXPECT_EQ(s.evaluations, 2u);
}

TEST(NmStep, ExpansionAccepted)
{
  const Objective f = [](std::span<const double> x) { return (x[0] + 3.0) * (x[0] + 3.0); };
  const Box box{{-10.0}, {10.0}};
  SimplexState s = manual({{1.0}, {2.0}}, f);
  nm_step(s, box, NmConfig{}, f);
  EXPECT_EQ(s.last_step, StepKind::expand);
  EXPECT_EQ(s.vertices[0], Point{-1.0});
}

TEST(NmStep, InsideContraction)
{
  // x_r = -1 is worse than the worst; x_ic = 1.5 improves on it.
  const Objective f = [](std::span<const double> x) { return std::abs(x[0] - 1.4) + (x[0] < 0 ? 10 : 0); };
  const Box box{{-10.0}, {10.0}};
  SimplexState s = manual({{1.0}, {3.0}}, f);
  nm_step(s, box, NmConfig{}, f);
  EXPECT_EQ(s.last_step, StepKind::inside_contract);
  EXPECT_EQ(s.vertices[0], Point{1.0});
  EXPECT_EQ(s.vertices[1], Point{2.0});
}

TEST(NmStep, ConstantObjectiveShrinksByDelta)
{
  const Objective flat = [](std::span<const double>) { return 1.0; };
  SimplexState s = nm_init({0.4, 0.4, 0.4}, Box::unit(3), NmConfig{}, flat);
  for (int k = 0; k < 5; ++k) {
    const double before = s.diameter();
    nm_step(s, Box::unit(3), NmConfig{}, flat);
    EXPECT_EQ(s.last_step, StepKind::shrink);
    EXPECT_NEAR(s.diameter(), 0.5 * before, 1e-12);
  }
}

TEST(NmStep, FailingObjectiveCountsAsInfinity)
{
  const Objective f = [](std::span<const double> x) {
    if (x[0] < 0.2)
      throw std::runtime_error("boom");
    if (x[0] > 0.9)
      return std::nan("");
    return x[0];
  };
  SimplexState s = nm_init({0.5}, Box::unit(1), NmConfig{}, f);
  for (int k = 0; k < 30; ++k) {
    nm_step(s, Box::unit(1), NmConfig{}, f);
    EXPECT_TRUE(std::isfinite(s.best_value()));
  }
  EXPECT_GE(s.best()[0], 0.2);
}

TEST(NmStep, BestNeverWorsensAndVerticesStayInBox)
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Objective rugged = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      s += std::sin(9.0 * x[i] + static_cast<double>(i)) + 2.0 * x[i] * x[i];
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    Point x0(4);
    for (double& v : x0)
      v = u(rng);
    SimplexState s = nm_init(x0, Box::unit(4), NmConfig{}, rugged);
    for (int k = 0; k < 60; ++k) {
      const double best = s.best_value();
      nm_step(s, Box::unit(4), NmConfig{}, rugged);
      EXPECT_LE(s.best_value(), best);
      for (const Point& v : s.vertices)
        EXPECT_TRUE(Box::unit(4).contains(v));
      for (std::size_t i = 1; i < s.values.size(); ++i)
        EXPECT_LE(s.values[i - 1], s.values[i]);
    }
  }
}

TEST(NmOptimize, SixDimensionalSphereFromCorner)
{
  const NmResult a = nm_optimize(sphere, Point(6, 1.0), Box::unit(6), NmConfig{});
  EXPECT_LT(a.value, 1e-3);
  EXPECT_LE(a.iterations, 200u);
  const NmResult b = nm_optimize(sphere, Point(6, 1.0), Box::unit(6), NmConfig{});
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST(NmOptimize, OptimalStartNeverWorsens)
{
  const NmResult r = nm_optimize(sphere, Point(3, 0.5), Box::unit(3), NmConfig{});
  EXPECT_LE(r.value, 0.0);
}

TEST(NmOptimize, StopsOnDiameter)
{
  NmConfig c;
  c.diameter_tol = 0.05;
  const NmResult r = nm_optimize(sphere, Point(2, 0.9), Box::unit(2), c);
  EXPECT_LT(r.final_state.diameter(), 0.05);
  EXPECT_LT(r.iterations, c.max_iters);
}

TEST(NmOptimize, DecodedWaitsStayInRange)
{
  // Pushes every coordinate out of the box; the incumbent depot is held fixed.
  const double depot_unit = 0.5;
  const Objective outward = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x)
      s -= std::abs(v - 0.5);
    return s;
  };
  NmConfig c;
  c.max_iters = 50;
  const NmResult r = nm_optimize(outward, Point(6, 0.5), Box::unit(6), c);
  coroute::UnitVector unit{depot_unit};
  std::copy(r.best.begin(), r.best.end(), unit.begin() + 1);
  const coroute::UgvParams p = coroute::decode_params(unit);
  EXPECT_EQ(p.start_depot, 2);
  EXPECT_GE(p.wait1_min, 2);
  EXPECT_LE(p.wait1_min, 50);
  EXPECT_GE(p.wait2_min, 2);
  EXPECT_LE(p.wait2_min, 50);
}
