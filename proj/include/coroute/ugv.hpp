#pragma once

#include "coroute/scenario.hpp"

#include <array>
#include <ostream>
#include <span>
#include <vector>

namespace coroute {

/// Outer search-space point: [depot, stop1_s, pad, stop2_s, pad, wait1, wait2],
/// every component in [0, 1]. The pads keep the genome at seven genes; they
/// are carried through the optimizers and ignored by the decoder.
using UnitVector = std::array<double, 7>;

namespace gene {
inline constexpr std::size_t depot = 0;
inline constexpr std::size_t stop1 = 1;
inline constexpr std::size_t stop1_pad = 2;
inline constexpr std::size_t stop2 = 3;
inline constexpr std::size_t stop2_pad = 4;
inline constexpr std::size_t wait1 = 5;
inline constexpr std::size_t wait2 = 6;
}  // namespace gene

inline constexpr double kMinWaitMin = 2.0;
inline constexpr double kMaxWaitMin = 50.0;
inline constexpr double kCoverageRadius = 50.0;  // m

struct UgvParams
{
  int start_depot = 1;  // 1-based
  double stop1_s = 0.0;
  double stop2_s = 0.0;
  int wait1_min = 2;
  int wait2_min = 2;
};

/// Affine map of the unit hypercube onto the parameter ranges. Throws
/// std::invalid_argument for components outside [0, 1].
UgvParams decode_params(std::span<const double> unit, int depot_count = 3);

/// Inverse of decode_params (depot encoded at the centre of its third).
UnitVector encode_params(const UgvParams& params, int depot_count = 3);

enum class WaypointKind { depot, drive, stop };

struct Waypoint
{
  Point2D position;
  double arrive = 0.0;  // s
  double depart = 0.0;  // s
  WaypointKind kind = WaypointKind::drive;
};

struct StopWindow
{
  std::size_t waypoint = 0;
  double open = 0.0;   // s
  double close = 0.0;  // s
};

struct UgvRoute
{
  std::vector<Waypoint> waypoints;
  std::vector<StopWindow> stop_windows;  // stop1, stop2
  std::vector<std::size_t> covered_targets;
  std::size_t depot_index = 0;  // 0-based into Scenario::depots
  double drive_time = 0.0;      // s
  double wait_time = 0.0;       // s
  double total_time = 0.0;      // s
  double length = 0.0;          // m
  double energy = 0.0;          // J
};

/// depot -> stop1 -> stop2 -> depot along the road tree, with the two waits.
UgvRoute build_ugv_route(const Scenario& scenario, const UgvParams& params,
                         double coverage_radius = kCoverageRadius);

/// Targets within `radius` of the traversed path.
std::vector<std::size_t> covered_targets(const Scenario& scenario, const UgvRoute& route,
                                         double radius);

/// Linear UGV power curve, W. Throws std::invalid_argument for v < 0.
double ugv_power(double v);

struct UgvEnergy
{
  double joules = 0.0;
  bool within_capacity = true;
};

UgvEnergy ugv_energy(const UgvRoute& route, const VehicleSpec& spec);

/// CSV trace: t_s,x_km,y_km,state.
void write_route_csv(std::ostream& out, const UgvRoute& route);

}  // namespace coroute
