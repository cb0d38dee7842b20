#pragma once

namespace coroute {

/// Battery constants of the reference UAV, J.
inline constexpr double kUavCapacity = 287'700.0;
inline constexpr double kChargeBreakpoint = 270'400.0;  // constant-power to taper switch
inline constexpr double kChargePower = 310.8;           // W, constant-power phase
inline constexpr double kTaperRate = 17.9;              // W per kJ below capacity
inline constexpr double kFullCutoff = 100.0;            // J short of capacity counts as full

/// Cubic flight-power curve, W. Valid for 0 <= v <= 30 m/s; throws
/// std::invalid_argument outside that range.
double uav_power(double v);

/// Energy drawn flying for travel_s seconds at speed v.
double edge_energy(double travel_s, double v);

/// Seconds to charge from `energy` joules to capacity minus the full cutoff,
/// integrating the two-phase charge-rate model in closed form. Throws
/// std::invalid_argument when energy is outside [0, kUavCapacity].
double recharge_time(double energy);

/// Farthest one-way distance with a safe return on a full charge, m.
double endurance_radius(double capacity, double v);

}  // namespace coroute
