#pragma once

#include "coroute/geometry.hpp"

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coroute {

/// Tolerance for "lies on the road network", meters.
inline constexpr double kSnapTolerance = 1.0;

class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class PowerModel { uav_cubic, ugv_linear };

struct VehicleSpec
{
  double speed = 0.0;          // m/s
  double fuel_capacity = 0.0;  // J
  PowerModel power_model = PowerModel::uav_cubic;
};

struct Depot
{
  Point2D position;
  std::size_t id = 0;  // 0-based position in the scenario's depot list
  bool ugv_rechargeable = false;
};

/// Sub-segment of one branch, as arclengths in meters.
struct RoadSegmentRef
{
  std::size_t branch_index = 0;
  double from_arclength = 0.0;
  double to_arclength = 0.0;
};

/// Position on the road network.
struct RoadLocation
{
  std::size_t branch = 0;
  double arclength = 0.0;
};

struct Scenario
{
  std::string name;
  std::vector<Polyline> branches;
  std::vector<Point2D> targets;
  std::vector<Depot> depots;
  VehicleSpec uav_spec;
  VehicleSpec ugv_spec;
  RoadSegmentRef stop_region_1;
  RoadSegmentRef stop_region_2;
  double horizon = 0.0;  // s

  // Derived during validation.
  Point2D junction;
  std::vector<double> junction_arclength;  // per branch

  /// Point at fraction u in [0,1] of a stop region.
  Point2D region_point(const RoadSegmentRef& region, double u) const;

  /// Snap p onto the network. Throws ScenarioError when p is farther than
  /// kSnapTolerance from every branch.
  RoadLocation locate(Point2D p) const;
};

/// Parse and validate a scenario document (JSON, coordinates in km).
Scenario load_scenario(std::string_view document);

Scenario load_scenario_file(const std::filesystem::path& path);

/// Checks every scenario invariant; fills the derived junction fields.
void validate(Scenario& scenario);

/// Unique path along the branch tree between two on-network points.
Polyline road_path(const Scenario& scenario, Point2D a, Point2D b);

}  // namespace coroute
