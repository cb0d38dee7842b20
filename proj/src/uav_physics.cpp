#include "coroute/uav_physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coroute {

double uav_power(double v)
{
  if (!(v >= 0.0 && v <= 30.0))
    throw std::invalid_argument("uav_power: speed outside [0, 30] m/s");
  return 0.046 * v * v * v - 0.583 * v * v - 1.876 * v + 229.6;
}

double edge_energy(double travel_s, double v)
{
  return uav_power(v) * travel_s;
}

double recharge_time(double energy)
{
  if (!(energy >= 0.0 && energy <= kUavCapacity))
    throw std::invalid_argument("recharge_time: energy outside [0, capacity]");
  double t = 0.0;
  if (energy < kChargeBreakpoint)
    t += (kChargeBreakpoint - energy) / kChargePower;
  // Taper: dE/dt = kTaperRate * (capacity - E) with E in kJ.
  const double gap = kUavCapacity - std::max(energy, kChargeBreakpoint);
  if (gap > kFullCutoff)
    t += (1000.0 / kTaperRate) * std::log(gap / kFullCutoff);
  return t;
}

double endurance_radius(double capacity, double v)
{
  return capacity / uav_power(v) * v / 2.0;
}

}  // namespace coroute
