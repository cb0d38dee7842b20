#include "coroute/report.hpp"

#include "coroute/uav_physics.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <json.hpp>
#include <sstream>

namespace coroute {

RunReport make_report(const Scenario& scenario, const UgvParams& params, const OuterDetail& d)
{
  RunReport r;
  r.scenario = scenario.name;
  r.feasible = true;
  r.params = params;
  r.stop1 = scenario.region_point(scenario.stop_region_1, params.stop1_s);
  r.stop2 = scenario.region_point(scenario.stop_region_2, params.stop2_s);

  r.ugv.travel_min = d.route.total_time / 60.0;
  r.ugv.energy_mj = d.route.energy / 1e6;
  r.ugv.targets = d.route.covered_targets.size();

  const UavMetrics m = evaluate_plan(d.graph, d.plan);
  r.uav.travel_min = m.travel_s / 60.0;
  r.uav.energy_kj = m.energy_j / 1e3;
  r.uav.recharges_on_ugv = m.recharges_on_ugv;
  r.uav.recharges_on_depot = m.recharges_on_depot;
  r.uav.targets = m.targets_visited;

  r.objective_min = outer_objective(r.ugv.travel_min, r.uav.travel_min);
  r.total_time_min = std::max(r.ugv.travel_min, r.uav.travel_min);
  return r;
}

std::string to_json(const RunReport& r)
{
  using nlohmann::ordered_json;
  ordered_json j;
  j["scenario"] = r.scenario;
  j["mode"] = r.mode;
  j["provenance"] = r.provenance;
  j["seed"] = r.seed;
  j["feasible"] = r.feasible;
  if (!r.feasible) {
    j["diagnostic"] = r.diagnostic;
  } else {
    j["objective_min"] = r.objective_min;
    j["total_time_min"] = r.total_time_min;
    j["ugv"] = {{"travel_min", r.ugv.travel_min},
                {"energy_mj", r.ugv.energy_mj},
                {"targets", r.ugv.targets}};
    j["uav"] = {{"travel_min", r.uav.travel_min},
                {"energy_kj", r.uav.energy_kj},
                {"recharges_on_ugv", r.uav.recharges_on_ugv},
                {"recharges_on_depot", r.uav.recharges_on_depot},
                {"targets", r.uav.targets}};
    j["params"] = {{"start_depot", r.params.start_depot},
                   {"stop1_s", r.params.stop1_s},
                   {"stop1_km", {r.stop1.x / 1e3, r.stop1.y / 1e3}},
                   {"stop2_s", r.params.stop2_s},
                   {"stop2_km", {r.stop2.x / 1e3, r.stop2.y / 1e3}},
                   {"wait1_min", r.params.wait1_min},
                   {"wait2_min", r.params.wait2_min}};
  }
  j["evaluations"] = r.evaluations;
  j["rounds"] = r.rounds;
  j["wall_clock_s"] = r.wall_clock_s ? ordered_json(*r.wall_clock_s) : ordered_json(nullptr);
  return j.dump(2) + "\n";
}

namespace {

class SvgFrame
{
public:
  SvgFrame(double min_x, double min_y, double max_x, double max_y)
      : min_x_(min_x), max_y_(max_y), width_(px(max_x - min_x)), height_(px(max_y - min_y))
  {
  }
  static double px(double meters) { return meters * kScale; }
  double x(double mx) const { return px(mx - min_x_); }
  double y(double my) const { return px(max_y_ - my); }
  double width() const { return width_; }
  double height() const { return height_; }

private:
  static constexpr double kScale = 0.04;  // px per meter
  double min_x_;
  double max_y_;
  double width_;
  double height_;
};

}  // namespace

void render_plot(std::ostream& out, const Scenario& s, const UgvRoute& route,
                 const RoutingGraph& graph, const UavPlan& plan)
{
  const double radius = endurance_radius(s.uav_spec.fuel_capacity, s.uav_spec.speed);
  const int m = graph.end_vertex();

  std::vector<int> centres{0};
  for (std::size_t p = 1; p + 1 < plan.tour.size(); ++p)
    if (graph.is_intermediate_recharge(plan.tour[p]))
      centres.push_back(plan.tour[p]);

  constexpr double inf = std::numeric_limits<double>::infinity();
  double lo_x = inf, lo_y = inf, hi_x = -inf, hi_y = -inf;
  const auto grow = [&](Point2D p, double pad) {
    lo_x = std::min(lo_x, p.x - pad);
    lo_y = std::min(lo_y, p.y - pad);
    hi_x = std::max(hi_x, p.x + pad);
    hi_y = std::max(hi_y, p.y + pad);
  };
  for (const Polyline& b : s.branches)
    for (Point2D p : b.points())
      grow(p, 500.0);
  for (Point2D p : s.targets)
    grow(p, 500.0);
  if (!graph.vertices().empty())
    for (int c : centres)
      grow(graph.vertex(c).position, radius);
  const SvgFrame f(lo_x, lo_y, hi_x, hi_y);

  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width() << "\" height=\""
      << f.height() << "\" viewBox=\"0 0 " << f.width() << ' ' << f.height() << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (!graph.vertices().empty())
    for (int c : centres) {
      const Point2D p = graph.vertex(c).position;
      out << "<circle class=\"range\" cx=\"" << f.x(p.x) << "\" cy=\"" << f.y(p.y) << "\" r=\""
          << SvgFrame::px(radius) << "\" data-radius-m=\"" << radius
          << "\" fill=\"lightblue\" fill-opacity=\"0.15\" stroke=\"steelblue\"/>\n";
    }

  for (const Polyline& b : s.branches) {
    out << "<polyline class=\"branch\" fill=\"none\" stroke=\"gray\" stroke-width=\"3\" points=\"";
    for (Point2D p : b.points())
      out << f.x(p.x) << ',' << f.y(p.y) << ' ';
    out << "\"/>\n";
  }

  out << "<polyline class=\"ugv-route\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
  for (const Waypoint& w : route.waypoints)
    out << f.x(w.position.x) << ',' << f.y(w.position.y) << ' ';
  out << "\"/>\n";

  if (!plan.empty()) {
    out << "<polyline class=\"uav-route\" fill=\"none\" stroke=\"red\" stroke-dasharray=\"6,4\" "
           "points=\"";
    for (int v : plan.tour)
      out << f.x(graph.vertex(v).position.x) << ',' << f.y(graph.vertex(v).position.y) << ' ';
    out << "\"/>\n";
  }

  std::vector<bool> by_ugv(s.targets.size(), false);
  for (std::size_t t : route.covered_targets)
    by_ugv[t] = true;
  for (std::size_t t = 0; t < s.targets.size(); ++t) {
    const Point2D p = s.targets[t];
    out << "<circle class=\"" << (by_ugv[t] ? "target-ugv" : "target-uav") << "\" cx=\""
        << f.x(p.x) << "\" cy=\"" << f.y(p.y) << "\" r=\"4\" fill=\""
        << (by_ugv[t] ? "blue" : "red") << "\"/>\n";
  }

  for (const Depot& d : s.depots)
    out << "<rect class=\"depot\" x=\"" << f.x(d.position.x) - 6 << "\" y=\""
        << f.y(d.position.y) - 6 << "\" width=\"12\" height=\"12\" fill=\"black\"/>\n";

  for (std::size_t p = 1; p + 1 < plan.tour.size(); ++p) {
    const int v = plan.tour[p];
    if (v >= m || graph.vertex(v).kind != VertexKind::ugv_stop)
      continue;
    const Point2D c = graph.vertex(v).position;
    const double x = f.x(c.x);
    const double y = f.y(c.y);
    out << "<path class=\"recharge-ugv\" d=\"M" << x - 7 << ',' << y - 7 << " L" << x + 7 << ','
        << y + 7 << " M" << x - 7 << ',' << y + 7 << " L" << x + 7 << ',' << y - 7
        << "\" stroke=\"red\" stroke-width=\"3\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace coroute
