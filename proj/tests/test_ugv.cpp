#include "coroute/ugv.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <algorithm>
#include <random>

using namespace coroute;

namespace {

Scenario bundled(int k)
{
  return load_scenario_file(std::string(COROUTE_DATA_DIR) + "/scenario" + std::to_string(k) + ".json");
}

// Depot at the junction and both stop regions starting there.
Scenario degenerate_scenario()
{
  return load_scenario(R"({
    "name": "degenerate",
    "branches": [[[0, 0], [0, 4]], [[0, 0], [3, 0]]],
    "targets": [[0, 0.03], [0, 2], [2, 2]],
    "depots": [{"position": [0, 0], "ugv_rechargeable": true}],
    "uav": {"speed_mps": 10, "fuel_capacity_kj": 287.7},
    "ugv": {"speed_mps": 4, "fuel_capacity_mj": 25.01},
    "stop_region_1": {"branch": 0, "from_km": 0, "to_km": 3},
    "stop_region_2": {"branch": 1, "from_km": 0, "to_km": 2},
    "horizon_s": 21600
  })");
}

}  // namespace

TEST(DecodeParams, AllZerosIsLowerBounds)
{
  const UnitVector u{};
  const UgvParams p = decode_params(u);
  EXPECT_EQ(p.start_depot, 1);
  EXPECT_EQ(p.stop1_s, 0.0);
  EXPECT_EQ(p.stop2_s, 0.0);
  EXPECT_EQ(p.wait1_min, 2);
  EXPECT_EQ(p.wait2_min, 2);
}

TEST(DecodeParams, AllOnesIsUpperBounds)
{
  UnitVector u;
  u.fill(1.0);
  const UgvParams p = decode_params(u);
  EXPECT_EQ(p.start_depot, 3);
  EXPECT_EQ(p.stop1_s, 1.0);
  EXPECT_EQ(p.stop2_s, 1.0);
  EXPECT_EQ(p.wait1_min, 50);
  EXPECT_EQ(p.wait2_min, 50);
}

TEST(DecodeParams, HalfWaitIsTwentySixMinutes)
{
  UnitVector u{};
  u[gene::wait1] = 0.5;
  u[gene::wait2] = 0.5;
  EXPECT_EQ(decode_params(u).wait1_min, 26);
  EXPECT_EQ(decode_params(u).wait2_min, 26);
}

TEST(DecodeParams, DepotQuantizedByThirds)
{
  UnitVector u{};
  u[gene::depot] = 0.33;
  EXPECT_EQ(decode_params(u).start_depot, 1);
  u[gene::depot] = 0.34;
  EXPECT_EQ(decode_params(u).start_depot, 2);
  u[gene::depot] = 0.67;
  EXPECT_EQ(decode_params(u).start_depot, 3);
}

TEST(DecodeParams, PadsAreIgnored)
{
  UnitVector a{};
  UnitVector b{};
  b[gene::stop1_pad] = 0.9;
  b[gene::stop2_pad] = 0.1;
  const UgvParams pa = decode_params(a);
  const UgvParams pb = decode_params(b);
  EXPECT_EQ(pa.start_depot, pb.start_depot);
  EXPECT_EQ(pa.stop1_s, pb.stop1_s);
  EXPECT_EQ(pa.wait1_min, pb.wait1_min);
}

TEST(DecodeParams, OutOfRangeThrows)
{
  UnitVector u{};
  u[gene::wait1] = 1.2;
  EXPECT_THROW(decode_params(u), std::invalid_argument);
  u[gene::wait1] = -0.1;
  EXPECT_THROW(decode_params(u), std::invalid_argument);
  const std::vector<double> short_vec(6, 0.5);
  EXPECT_THROW(decode_params(short_vec), std::invalid_argument);
}

TEST(DecodeParams, EncodeRoundTrip)
{
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> depot(1, 3);
  std::uniform_int_distribution<int> wait(2, 50);
  for (int i = 0; i < 500; ++i) {
    const UgvParams p{depot(rng), unit(rng), unit(rng), wait(rng), wait(rng)};
    const UgvParams q = decode_params(encode_params(p));
    EXPECT_EQ(q.start_depot, p.start_depot);
    EXPECT_DOUBLE_EQ(q.stop1_s, p.stop1_s);
    EXPECT_DOUBLE_EQ(q.stop2_s, p.stop2_s);
    EXPECT_EQ(q.wait1_min, p.wait1_min);
    EXPECT_EQ(q.wait2_min, p.wait2_min);
  }
}

TEST(UgvPower, Examples)
{
  EXPECT_DOUBLE_EQ(ugv_power(0.0), 356.3);
  EXPECT_NEAR(ugv_power(4.0), 2215.5, 1e-9);
  EXPECT_NEAR(ugv_power(1.0), 821.1, 1e-9);
  EXPECT_THROW(ugv_power(-1.0), std::invalid_argument);
}

TEST(UgvEnergy, Examples)
{
  const VehicleSpec spec{4.0, 25.01e6, PowerModel::ugv_linear};
  UgvRoute idle;
  EXPECT_EQ(ugv_energy(idle, spec).joules, 0.0);
  EXPECT_TRUE(ugv_energy(idle, spec).within_capacity);

  UgvRoute drive;
  drive.drive_time = 1000.0;
  EXPECT_NEAR(ugv_energy(drive, spec).joules, 2.2155e6, 1e-6);
}

TEST(UgvEnergy, TableThreeScaleWithinThirtyPercent)
{
  const VehicleSpec spec{4.0, 25.01e6, PowerModel::ugv_linear};
  UgvRoute r;
  r.drive_time = 188.0 * 60.0;
  r.wait_time = 40.0 * 60.0;
  const double e = ugv_energy(r, spec).joules;
  EXPECT_NEAR(e, 25.8e6, 0.1e6);
  EXPECT_NEAR(e, 23.16e6, 0.3 * 23.16e6);
  EXPECT_FALSE(ugv_energy(r, spec).within_capacity);
}

TEST(BuildUgvRoute, NearestEndpointStopsWithShortWaits)
{
  // Depot 1 sits at the end of the west branch; both regions start on the
  // junction side. Hand-computed: 2 * (5.381829 + 1.398070 + 10.959808) km.
  const Scenario s = bundled(1);
  const UgvRoute r = build_ugv_route(s, {1, 0.0, 0.0, 2, 2});
  EXPECT_NEAR(r.length, 35'479.41, 0.5);
  EXPECT_NEAR(r.total_time, 35'479.41 / 4.0 + 240.0, 1.0);
  EXPECT_DOUBLE_EQ(r.wait_time, 240.0);
}

TEST(BuildUgvRoute, TwentyMinuteWaitsGiveTwelveHundredSecondWindows)
{
  const Scenario s = bundled(1);
  const UgvRoute r = build_ugv_route(s, {1, 0.3, 0.6, 20, 20});
  ASSERT_EQ(r.stop_windows.size(), 2u);
  for (const StopWindow& w : r.stop_windows)
    EXPECT_DOUBLE_EQ(w.close - w.open, 1200.0);
  EXPECT_LE(r.stop_windows[0].close, r.stop_windows[1].open);
}

TEST(BuildUgvRoute, ZeroLengthRoute)
{
  const Scenario s = degenerate_scenario();
  const UgvRoute r = build_ugv_route(s, {1, 0.0, 0.0, 7, 11});
  EXPECT_DOUBLE_EQ(r.total_time, (7 + 11) * 60.0);
  EXPECT_DOUBLE_EQ(r.length, 0.0);
  EXPECT_EQ(r.covered_targets, std::vector<std::size_t>{0});
}

TEST(BuildUgvRoute, WaypointInvariants)
{
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 1; k <= 3; ++k) {
    const Scenario s = bundled(k);
    for (int trial = 0; trial < 30; ++trial) {
      UnitVector u;
      for (double& x : u)
        x = unit(rng);
      const UgvRoute r = build_ugv_route(s, decode_params(u));
      const auto& w = r.waypoints;
      ASSERT_GE(w.size(), 2u);
      EXPECT_EQ(w.front().position, s.depots[r.depot_index].position);
      EXPECT_LT(distance(w.back().position, w.front().position), 1e-9);
      for (std::size_t i = 0; i < w.size(); ++i) {
        EXPECT_LE(w[i].arrive, w[i].depart);
        if (w[i].kind == WaypointKind::drive) {
            EXPECT_EQ(w[i].arrive, w[i].depart);
        }
        if (i > 0) {
          EXPECT_LE(w[i - 1].depart, w[i].arrive);
          const double dt = distance(w[i - 1].position, w[i].position) / s.ugv_spec.speed;
          EXPECT_NEAR(w[i].arrive - w[i - 1].depart, dt, 1.0);
        }
      }
      EXPECT_GE(r.energy, 0.0);
      EXPECT_NEAR(r.total_time, r.drive_time + r.wait_time, 1e-6);
    }
  }
}

TEST(BuildUgvRoute, LongerWaitsStrictlyIncreaseTotalTime)
{
  const Scenario s = bundled(2);
  const double base = build_ugv_route(s, {2, 0.4, 0.7, 10, 10}).total_time;
  EXPECT_GT(build_ugv_route(s, {2, 0.4, 0.7, 11, 10}).total_time, base);
  EXPECT_GT(build_ugv_route(s, {2, 0.4, 0.7, 10, 11}).total_time, base);
}

TEST(BuildUgvRoute, CoverageMonotoneInRadius)
{
  const Scenario s = bundled(3);
  const UgvRoute r = build_ugv_route(s, {1, 0.5, 0.5, 5, 5});
  std::vector<std::size_t> previous;
  for (double radius : {0.0, 25.0, 50.0, 300.0, 1000.0, 3000.0}) {
    const std::vector<std::size_t> now = covered_targets(s, r, radius);
    EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
    previous = now;
  }
}

TEST(BuildUgvRoute, BadDepotThrows)
{
  const Scenario s = bundled(1);
  EXPECT_THROW(build_ugv_route(s, {4, 0.0, 0.0, 2, 2}), std::invalid_argument);
}

TEST(BuildUgvRoute, RouteCsvHasDriveAndWaitRows)
{
  const Scenario s = bundled(1);
  std::ostringstream out;
  write_route_csv(out, build_ugv_route(s, {1, 0.5, 0.5, 20, 20}));
  const std::string csv = out.str();
  EXPECT_EQ(csv.rfind("t_s,x_km,y_km,state\n", 0), 0u);
  EXPECT_NE(csv.find(",wait\n"), std::string::npos);
  EXPECT_NE(csv.find(",drive\n"), std::string::npos);
}
