#include <cmath>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "gdam/problems.hpp"
#include "svg.hpp"

namespace gdam::cli {

namespace {

struct Trace2dOptions {
  std::string problem = "analytic";
  std::vector<double> x0;
  int stride = 1;
  SolverFlags flags;
};

int run_trace2d(const Trace2dOptions& o, Invocation& inv) {
  const bool analytic = o.problem == "analytic";
  const Problem prob = analytic ? analytic_2d_problem() : nonconvex_2d_problem();
  Vec x0 = o.x0.empty() ? (analytic ? Vec{{30.0, 0.0}} : Vec{{1.5, 2.0}})
                        : Vec{{o.x0[0], o.x0[1]}};

  SolverConfig c;
  c.zeta = 0.95;
  c.beta = 1e-3;
  c.max_iters = 1000000;
  o.flags.apply(c);
  c.record_trajectory = true;
  c.trajectory_stride = o.stride;
  c.allow_exterior_start = !strictly_feasible(prob, x0);

  Run run("trace2d", inv.argv, inv.out_dir);
  run.config() = {{"problem", o.problem}, {"x0", to_json(x0)}, {"stride", o.stride},
                  {"solver", to_json(c)}};
  const SolveResult r = vanilla_solve(prob, c, x0);

  std::ostringstream csv;
  csv << "k,x1,x2,f,g,cos,eps,beta\n";
  std::vector<Point2> path;
  for (const auto& t : r.trajectory) {
    csv << t.k << ',' << fmt(t.x[0]) << ',' << fmt(t.x[1]) << ',' << fmt(t.f) << ','
        << fmt(t.max_g) << ',' << fmt(t.cos_theta) << ',' << fmt(t.residual) << ','
        << fmt(t.beta) << '\n';
    path.push_back({t.x[0], t.x[1]});
  }
  run.write("trace2d.csv", csv.str());

  std::vector<Point2> extent = path;
  if (analytic) extent.push_back({0.0, 10.0});
  Box box = Box::around(extent, 0.1);
  auto f = [&](double a, double b) { return prob.objective(Vec{{a, b}}); };
  Svg svg(box);
  svg.title(o.problem + " problem, zeta = " + fmt(c.zeta) + ", beta = " + fmt(c.beta));
  for (double level : quantile_levels(f, box, 14)) {
    svg.segments(contour_segments(f, box, level), "#c8c8c8", 0.7);
  }
  for (const auto& g : prob.inequalities) {
    auto gf = [&](double a, double b) { return g.value(Vec{{a, b}}); };
    svg.segments(contour_segments(gf, box, 0.0, 240, 240), "#d62728", 1.6);
  }
  svg.legend("constraint g = 0", "#d62728");

  std::cout << "termination: " << to_string(r.termination) << "\n"
            << "iterations: " << r.iterations << "\n"
            << "x: " << fmt(r.x[0]) << " " << fmt(r.x[1]) << "\n"
            << "f: " << fmt(r.f) << "\n";
  run.summary() = to_json(r);

  svg.polyline(path, "#1f77b4", 1.6);
  svg.circles({path.front()}, "#1f77b4", 4.0);
  svg.circles({path.back()}, "#ff7f0e", 4.5);
  svg.legend("GDAM iterates", "#1f77b4");
  svg.legend("solution point", "#ff7f0e");
  if (analytic && x0[0] != 0.0) {
    const AnalyticTrajectory traj = AnalyticTrajectory::make(c.zeta, x0);
    std::vector<Point2> gamma;
    for (int i = 0; i <= 400; ++i) {
      const double x1 = x0[0] * std::pow(1e-4, i / 400.0);
      if (x1 < box.xmin || x1 > box.xmax) continue;
      gamma.push_back({x1, traj.x2_at(x1)});
    }
    svg.polyline(gamma, "#2ca02c", 1.2, "6,4");
    svg.legend("closed-form trajectory", "#2ca02c");
    double max_defect = 0.0;
    for (const auto& t : r.trajectory) {
      max_defect = std::max(max_defect, std::abs(trajectory_defect(traj, t.x)));
    }
    const bool ok = max_defect <= 50.0 * c.beta;
    std::cout << "max trajectory defect: " << fmt(max_defect) << " (bound 50*beta = "
              << fmt(50.0 * c.beta) << ", " << (ok ? "ok" : "exceeded") << ")\n";
    run.summary()["max_trajectory_defect"] = max_defect;
    run.summary()["defect_bound"] = 50.0 * c.beta;
    if (c.zeta > 0.0 && c.zeta < 1.0 && is_boundary(r.termination)) {
      const double dist = (r.x - Vec{{0.0, 10.0}}).norm();
      const double bound = apex_distance_bound(c.zeta, x0) + 2.0 * c.beta;
      std::cout << "distance to KKT point: " << fmt(dist) << " (bound " << fmt(bound) << ")\n";
      run.summary()["kkt_distance"] = dist;
      run.summary()["kkt_distance_bound"] = bound;
    }
  } else if (!analytic) {
    const char* cls = is_boundary(r.termination) ? "boundary-KKT"
                      : r.termination == Termination::kStationaryObjective ? "interior-critical"
                                                                           : "unclassified";
    std::cout << "classification: " << cls << "\n";
    run.summary()["classification"] = cls;
  }
  run.write("trace2d.svg", svg.str(inv.timestamp));
  run.finish();
  return kExitOk;
}

}  // namespace

void add_trace2d(CLI::App& app, Invocation& inv) {
  auto o = std::make_shared<Trace2dOptions>();
  auto* sub = app.add_subcommand("trace2d", "Trace vanilla GDAM on a two-variable problem");
  sub->add_option("--problem", o->problem, "analytic or nonconvex")
      ->check(CLI::IsMember({"analytic", "nonconvex"}))
      ->capture_default_str();
  sub->add_option("--x0", o->x0, "Start point (two values)")->expected(2);
  sub->add_option("--stride", o->stride, "Record every this many iterates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  o->flags.add_to(*sub);
  sub->callback([o, &inv] { inv.action = [o, &inv] { return run_trace2d(*o, inv); }; });
}

}  // namespace gdam::cli
