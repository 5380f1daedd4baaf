#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "commands.hpp"
#include "common.hpp"
#include "gdam/snl.hpp"
#include "svg.hpp"

namespace gdam::cli {

namespace {

struct GenOptions {
  int n = 50;
  double radius = 0.3;
  std::uint64_t seed = 1;
  int anchors = 4;
  bool random_anchors = false;
  double noise = 0.0;
  std::string instance;
};

struct SolveOptions {
  std::string instance;
  bool no_polish = false;
  double presolve = 10.0;
  SolverFlags flags;
};

struct PlotOptions {
  std::string instance;
  std::string result;
};

json summary_of(const LocalizationResult& r) {
  return {{"localizable", r.localizable},
          {"rmsd_sdp", number(r.rmsd_sdp)},
          {"rmsd_refined", number(r.rmsd_refined)},
          {"rank_proxy", number(r.rank_proxy)},
          {"eta", number(r.eta)},
          {"dual_objective", number(r.dual_objective)},
          {"min_pivot", number(r.min_pivot)},
          {"phase1_steps", r.phase1_steps},
          {"iterations", r.iterations},
          {"restarts", r.restarts},
          {"polish_iterations", r.polish_iterations},
          {"refine_iterations", r.refine_iterations},
          {"termination", std::string(to_string(r.termination))}};
}

int run_gen(const GenOptions& o, Invocation& inv) {
  Run run("snl gen", inv.argv, inv.out_dir);
  GenerateOptions g;
  g.n_anchors = o.anchors;
  g.random_anchors = o.random_anchors;
  g.noise = o.noise;
  const SnlInstance inst = generate_instance(o.n, o.radius, o.seed, g);
  run.seed(o.seed);
  run.config() = {{"n", o.n},
                  {"radius", o.radius},
                  {"anchors", o.anchors},
                  {"random_anchors", o.random_anchors},
                  {"noise", o.noise}};
  std::ostringstream text;
  write_instance(text, inst);
  const std::string path = o.instance.empty() ? run.path("instance.txt") : o.instance;
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
    out << text.str();
  }
  run.output(path);
  const bool connected = is_connected(inst);
  run.summary() = {{"edges", inst.num_edges()}, {"connected", connected}};
  run.finish();
  std::cout << "instance: " << path << "\n"
            << "sensors: " << inst.n << ", anchors: " << inst.anchors.cols()
            << ", edges: " << inst.num_edges() << "\n";
  if (!connected) std::cout << "warning: disconnected instance, some sensors are not localizable\n";
  return kExitOk;
}

int run_solve(const SolveOptions& o, Invocation& inv) {
  Run run("snl solve", inv.argv, inv.out_dir);
  run.input(o.instance);
  const SnlInstance inst = read_instance_file(o.instance);
  SnlConfig cfg;
  o.flags.apply(cfg.main);
  cfg.polish = !o.no_polish;
  cfg.presolve = o.presolve;
  run.config() = {{"main", to_json(cfg.main)},
                  {"polish", cfg.polish},
                  {"polish_config", to_json(cfg.polish_config)},
                  {"presolve", cfg.presolve},
                  {"phase1", {{"lambda", cfg.phase1.lambda}, {"budget", cfg.phase1.budget}}},
                  {"refine_max_iters", cfg.refine_max_iters}};
  run.seed(inst.seed);
  const LocalizationResult r = localize(inst, cfg);

  std::ostringstream text;
  write_result(text, inst, r);
  run.write("result.txt", text.str());
  const json s = summary_of(r);
  run.write("result.json", s.dump(2) + "\n");
  run.summary() = s;
  run.summary()["runtime_seconds"] = r.runtime_seconds;
  run.finish();

  if (!r.localizable) {
    std::cout << "warning: instance is not localizable (no edges or disconnected)\n";
    return kExitOk;
  }
  std::cout << "iterations: " << r.iterations << " (polish " << r.polish_iterations
            << ", refine " << r.refine_iterations << ")\n"
            << "termination: " << to_string(r.termination) << "\n"
            << "rmsd_sdp: " << fmt(r.rmsd_sdp) << "\n"
            << "rmsd_refined: " << fmt(r.rmsd_refined) << "\n"
            << "rank_proxy: " << fmt(r.rank_proxy) << "\n";
  return kExitOk;
}

std::vector<Point2> columns(const Mat& M) {
  std::vector<Point2> pts;
  for (Eigen::Index j = 0; j < M.cols(); ++j) pts.push_back({M(0, j), M(1, j)});
  return pts;
}

int run_plot(const PlotOptions& o, Invocation& inv) {
  Run run("snl plot", inv.argv, inv.out_dir);
  const std::string result = o.result.empty() ? run.path("result.txt") : o.result;
  run.input(o.instance);
  run.input(result);
  const SnlInstance inst = read_instance_file(o.instance);
  std::ifstream in(result);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open " + result, 0);
  const StoredResult r = read_result(in);

  const Mat anchors = inst.anchors / inst.scale;
  std::vector<Point2> all = columns(anchors);
  for (const Mat* M : {&r.X, &r.X_refined, &r.X_true}) {
    for (const auto& p : columns(*M)) all.push_back(p);
  }
  Svg svg(Box::around(all, 0.08));
  svg.title("sensor localization, n = " + std::to_string(inst.n));
  svg.circles(columns(r.X_true), "#1f77b4", 5.0, false);
  svg.circles(columns(r.X), "#ff7f0e", 2.5);
  svg.circles(columns(r.X_refined), "#2ca02c", 1.8);
  svg.squares(columns(anchors), "#d62728");
  svg.legend("true positions", "#1f77b4");
  svg.legend("SDP estimates", "#ff7f0e");
  svg.legend("refined estimates", "#2ca02c");
  svg.legend("anchors", "#d62728");
  run.write("snl.svg", svg.str(inv.timestamp));
  run.finish();
  std::cout << "plot: " << run.path("snl.svg") << "\n";
  return kExitOk;
}

}  // namespace

void add_snl(CLI::App& app, Invocation& inv) {
  auto* snl = app.add_subcommand("snl", "Sensor network localization");
  snl->require_subcommand(1);

  auto g = std::make_shared<GenOptions>();
  auto* gen = snl->add_subcommand("gen", "Generate a random instance");
  gen->add_option("--n", g->n, "Number of sensors")->check(CLI::PositiveNumber)->capture_default_str();
  gen->add_option("--radius,-r", g->radius, "Radio range")->capture_default_str();
  gen->add_option("--seed", g->seed, "Generator seed")->capture_default_str();
  gen->add_option("--anchors", g->anchors, "Number of anchors")->capture_default_str();
  gen->add_flag("--random-anchors", g->random_anchors, "Uniform anchors instead of corners");
  gen->add_option("--noise", g->noise, "Multiplicative distance noise")->capture_default_str();
  gen->add_option("--instance", g->instance, "Instance path (default <out>/instance.txt)");
  gen->callback([g, &inv] { inv.action = [g, &inv] { return run_gen(*g, inv); }; });

  auto s = std::make_shared<SolveOptions>();
  auto* solve = snl->add_subcommand("solve", "Phase I, main solve, postsolve and refinement");
  solve->add_option("--instance", s->instance, "Instance file")->required();
  solve->add_flag("--no-polish", s->no_polish, "Skip the zeta = 1 polish run");
  solve->add_option("--presolve", s->presolve, "Geometry scale factor")->capture_default_str();
  s->flags.add_to(*solve);
  solve->callback([s, &inv] { inv.action = [s, &inv] { return run_solve(*s, inv); }; });

  auto p = std::make_shared<PlotOptions>();
  auto* plot = snl->add_subcommand("plot", "Scatter plot of true, SDP and refined positions");
  plot->add_option("--instance", p->instance, "Instance file")->required();
  plot->add_option("--result", p->result, "Result file (default <out>/result.txt)");
  plot->callback([p, &inv] { inv.action = [p, &inv] { return run_plot(*p, inv); }; });
}

}  // namespace gdam::cli
