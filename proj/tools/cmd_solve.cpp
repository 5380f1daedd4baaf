#include <iostream>
#include <memory>
#include <optional>

#include "commands.hpp"
#include "common.hpp"
#include "gdam/problems.hpp"

namespace gdam::cli {

namespace {

struct SolveOptions {
  std::string problem;
  std::string qp_file;
  std::string algorithm;
  std::uint64_t seed = 1;
  std::vector<double> x0;
  std::optional<bool> line_search;
  std::optional<bool> restart;
  std::optional<double> reference;
  SolverFlags flags;
};

bool is_cec(const std::string& id) {
  for (const auto& c : cec_ids()) {
    if (c == id) return true;
  }
  return false;
}

int run_solve(const SolveOptions& o, Invocation& inv) {
  if (o.problem.empty() == o.qp_file.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "give exactly one of --problem and --qp");
  }
  Run run("solve", inv.argv, inv.out_dir);
  Problem prob;
  std::optional<QpProblem> qp;
  Vec x0;
  SolverConfig c;
  std::string algorithm = o.algorithm;
  if (!o.qp_file.empty()) {
    run.input(o.qp_file);
    qp = read_qp_file(o.qp_file);
    prob = qp_to_problem(*qp);
    c = qp_solver_config();
    if (algorithm.empty()) algorithm = "accelerated";
    x0 = qp_feasible_start(*qp);
  } else if (o.problem == "analytic") {
    prob = analytic_2d_problem();
    x0 = Vec{{30.0, 0.0}};
  } else if (o.problem == "nonconvex") {
    prob = nonconvex_2d_problem();
    x0 = Vec{{1.5, 2.0}};
  } else if (is_cec(o.problem)) {
    prob = cec_problem(o.problem);
    c.beta = cec_info(o.problem).reference.stepsize;
    x0 = cec_random_start(o.problem, o.seed);
    run.seed(o.seed);
  } else {
    throw Error(ErrorCode::kUnknownProblemId, "unknown problem id '" + o.problem + "'");
  }
  if (algorithm.empty()) algorithm = "vanilla";
  if (algorithm == "accelerated" && !qp) {
    c.line_search = true;
    c.restart.enabled = true;
  }
  if (o.line_search) c.line_search = *o.line_search;
  if (o.restart) c.restart.enabled = *o.restart;
  o.flags.apply(c);
  if (!o.x0.empty()) {
    x0 = Eigen::Map<const Vec>(o.x0.data(), static_cast<Eigen::Index>(o.x0.size()));
  }

  run.config() = {{"problem", qp ? qp->name : o.problem},
                  {"algorithm", algorithm},
                  {"x0", to_json(x0)},
                  {"solver", to_json(c)}};
  const SolveResult r =
      algorithm == "accelerated" ? accelerated_solve(prob, c, x0) : vanilla_solve(prob, c, x0);

  json out;
  out["problem"] = qp ? qp->name : o.problem;
  out["algorithm"] = algorithm;
  out["config"] = to_json(c);
  out["x0"] = to_json(x0);
  out["result"] = to_json(r);
  if (o.reference) prob.reference_optimum = *o.reference;
  if (prob.reference_optimum) {
    out["reference_optimum"] = *prob.reference_optimum;
    out["objective_error"] = objective_error(r.f, *prob.reference_optimum);
  }
  run.write("result.json", out.dump(2) + "\n");
  run.summary() = {{"f", number(r.f)},
                   {"iterations", r.iterations},
                   {"termination", std::string(to_string(r.termination))}};
  if (out.contains("objective_error")) run.summary()["objective_error"] = out["objective_error"];
  run.finish();

  std::cout << "termination: " << to_string(r.termination) << "\n"
            << "iterations: " << r.iterations << "\n"
            << "f: " << out["result"]["f"].dump() << "\n";
  if (out.contains("objective_error")) {
    std::cout << "objective error: " << out["objective_error"].dump() << "\n";
  }
  return kExitOk;
}

}  // namespace

void add_solve(CLI::App& app, Invocation& inv) {
  auto o = std::make_shared<SolveOptions>();
  auto* sub = app.add_subcommand("solve", "Run vanilla or accelerated GDAM on one problem");
  sub->add_option("--problem", o->problem, "Builtin id: analytic, nonconvex, G01, G04, G06, G08, G24");
  sub->add_option("--qp", o->qp_file, "QP file in the line-oriented text format");
  sub->add_option("--algorithm", o->algorithm, "vanilla or accelerated")
      ->check(CLI::IsMember({"vanilla", "accelerated"}));
  sub->add_option("--seed", o->seed, "Seed of the random start for CEC problems")
      ->capture_default_str();
  sub->add_option("--x0", o->x0, "Explicit start point");
  sub->add_option("--line-search", o->line_search, "Backtrack on violations (true/false)");
  sub->add_option("--restart", o->restart, "Objective-monitoring restarts (true/false)");
  sub->add_option("--reference", o->reference, "Known optimal objective value");
  o->flags.add_to(*sub);
  sub->callback([o, &inv] { inv.action = [o, &inv] { return run_solve(*o, inv); }; });
}

}  // namespace gdam::cli
