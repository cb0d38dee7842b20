#include "coroute/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace coroute {

namespace {

using nlohmann::json;

constexpr double kKm = 1000.0;

Point2D parse_point_km(const json& j)
{
  if (!j.is_array() || j.size() != 2)
    throw ScenarioError("parse error: expected [x_km, y_km], got " + j.dump());
  return {j.at(0).get<double>() * kKm, j.at(1).get<double>() * kKm};
}

RoadSegmentRef parse_region(const json& j)
{
  RoadSegmentRef r;
  r.branch_index = j.at("branch").get<std::size_t>();
  r.from_arclength = j.at("from_km").get<double>() * kKm;
  r.to_arclength = j.at("to_km").get<double>() * kKm;
  return r;
}

Scenario parse(const json& doc)
{
  Scenario s;
  s.name = doc.value("name", std::string{});
  for (const auto& branch : doc.at("branches")) {
    std::vector<Point2D> pts;
    for (const auto& p : branch)
      pts.push_back(parse_point_km(p));
    s.branches.emplace_back(std::move(pts));
  }
  for (const auto& t : doc.at("targets"))
    s.targets.push_back(parse_point_km(t));
  std::size_t id = 0;
  for (const auto& d : doc.at("depots")) {
    Depot depot;
    depot.position = parse_point_km(d.at("position"));
    depot.id = id++;
    depot.ugv_rechargeable = d.value("ugv_rechargeable", false);
    s.depots.push_back(depot);
  }
  const auto& uav = doc.at("uav");
  s.uav_spec = {uav.at("speed_mps").get<double>(),
                uav.at("fuel_capacity_kj").get<double>() * 1e3, PowerModel::uav_cubic};
  const auto& ugv = doc.at("ugv");
  s.ugv_spec = {ugv.at("speed_mps").get<double>(),
                ugv.at("fuel_capacity_mj").get<double>() * 1e6, PowerModel::ugv_linear};
  s.stop_region_1 = parse_region(doc.at("stop_region_1"));
  s.stop_region_2 = parse_region(doc.at("stop_region_2"));
  s.horizon = doc.at("horizon_s").get<double>();
  return s;
}

void check_region(const Scenario& s, const RoadSegmentRef& r, const char* which)
{
  if (r.branch_index >= s.branches.size())
    throw ScenarioError(std::string("validation error: ") + which +
                        " references a missing branch");
  const double len = s.branches[r.branch_index].length();
  if (!(0.0 <= r.from_arclength && r.from_arclength < r.to_arclength &&
        r.to_arclength <= len + 1e-6))
    throw ScenarioError(std::string("validation error: ") + which +
                        " must satisfy 0 <= from < to <= branch length");
}

}  // namespace

Point2D Scenario::region_point(const RoadSegmentRef& region, double u) const
{
  const double s =
      region.from_arclength + u * (region.to_arclength - region.from_arclength);
  return branches.at(region.branch_index).point_at(s);
}

RoadLocation Scenario::locate(Point2D p) const
{
  RoadLocation best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const Projection pr = branches[b].project(p);
    if (pr.distance < best_d) {
      best_d = pr.distance;
      best = {b, pr.arclength};
    }
  }
  if (best_d > kSnapTolerance) {
    std::ostringstream msg;
    msg << "point (" << p.x / kKm << ", " << p.y / kKm
        << ") km is not on the road network (" << best_d << " m away)";
    throw ScenarioError(msg.str());
  }
  return best;
}

void validate(Scenario& s)
{
  if (s.branches.empty())
    throw ScenarioError("validation error: scenario has no branches");
  for (const auto& b : s.branches) {
    if (b.size() < 2 || b.length() <= 0.0)
      throw ScenarioError("validation error: every branch needs two or more distinct points");
  }

  bool found = false;
  for (const auto& candidate_branch : s.branches) {
    for (const Point2D& c : candidate_branch.points()) {
      bool on_all = true;
      for (const auto& b : s.branches) {
        if (b.distance_to(c) > kSnapTolerance) {
          on_all = false;
          break;
        }
      }
      if (on_all) {
        s.junction = c;
        found = true;
        break;
      }
    }
    if (found)
      break;
  }
  if (!found)
    throw ScenarioError("validation error: branches share no common junction point");
  s.junction_arclength.clear();
  for (const auto& b : s.branches)
    s.junction_arclength.push_back(b.project(s.junction).arclength);

  if (s.depots.empty())
    throw ScenarioError("validation error: scenario has no depots");
  for (const auto& d : s.depots) {
    try {
      (void)s.locate(d.position);
    } catch (const ScenarioError& e) {
      throw ScenarioError("validation error: depot " + std::to_string(d.id + 1) +
                          " is off the road network: " + e.what());
    }
  }
  check_region(s, s.stop_region_1, "stop_region_1");
  check_region(s, s.stop_region_2, "stop_region_2");

  if (!(s.uav_spec.speed > 0.0) || !(s.ugv_spec.speed > 0.0))
    throw ScenarioError("validation error: vehicle speeds must be positive");
  if (!(s.uav_spec.fuel_capacity > 0.0) || !(s.ugv_spec.fuel_capacity > 0.0))
    throw ScenarioError("validation error: fuel capacities must be positive");
  if (!(s.horizon > 0.0))
    throw ScenarioError("validation error: horizon must be positive");
}

Scenario load_scenario(std::string_view document)
{
  Scenario s;
  try {
    s = parse(json::parse(document));
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("parse error: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw ScenarioError("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

Polyline road_path(const Scenario& s, Point2D a, Point2D b)
{
  const RoadLocation la = s.locate(a);
  const RoadLocation lb = s.locate(b);
  if (la.branch == lb.branch)
    return Polyline(s.branches[la.branch].between(la.arclength, lb.arclength));

  auto pts = s.branches[la.branch].between(la.arclength, s.junction_arclength[la.branch]);
  const auto tail =
      s.branches[lb.branch].between(s.junction_arclength[lb.branch], lb.arclength);
  // The tail starts at the junction, which already closes the first half.
  pts.insert(pts.end(), tail.begin() + 1, tail.end());
  return Polyline(std::move(pts));
}

}  // namespace coroute
