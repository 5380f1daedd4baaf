#include "gdam/solver.hpp"

#include <cmath>
#include <limits>

namespace gdam {

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::kBoundaryReachedStepFloor:
      return "BoundaryReachedStepFloor";
    case Termination::kBoundaryReachedNoLineSearch:
      return "BoundaryReachedNoLineSearch";
    case Termination::kMaxIters:
      return "MaxIters";
    case Termination::kStationaryObjective:
      return "StationaryObjective";
  }
  return "Unknown";
}

void SolverConfig::validate() const {
  auto fail = [](const char* what) {
    throw Error(ErrorCode::kInvalidArgument, what);
  };
  if (!(zeta >= 0.0 && zeta <= 1.0)) fail("zeta must lie in [0, 1]");
  if (!(beta_min > 0.0)) fail("beta_min must be positive");
  if (!(beta > beta_min)) fail("beta must exceed beta_min");
  if (!(tau > 0.0 && tau < 1.0)) fail("tau must lie in (0, 1)");
  if (!(momentum >= 0.0 && momentum < 1.0)) fail("momentum must lie in [0, 1)");
  if (max_iters < 0) fail("max_iters must be non-negative");
  if (restart.enabled && !(restart.kappa > 0.0)) fail("kappa must be positive");
  if (restart.monitor_period < 1) fail("monitor_period must be >= 1");
  if (trajectory_stride < 1) fail("trajectory_stride must be >= 1");
  if (!(zero_grad_tol >= 0.0)) fail("zero_grad_tol must be non-negative");
}

double SolverModel::max_constraint(const Vec&) const {
  return std::numeric_limits<double>::quiet_NaN();
}

ProblemModel::ProblemModel(const Problem& problem, bool allow_exterior)
    : problem_(problem), allow_exterior_(allow_exterior) {
  if (problem_.equality && problem_.equality->A.rows() > 0) {
    projector_.emplace(problem_.equality->A);
  }
}

bool ProblemModel::feasible(const Vec& x) const {
  return strictly_feasible(problem_, x);
}

std::optional<ModelPoint> ProblemModel::evaluate(const Vec& x) const {
  ModelPoint p;
  p.f = problem_.objective(x);
  p.grad_f = problem_.objective_gradient(x);
  BarrierEval b = evaluate_barrier(problem_, x);
  if (b.violated) {
    if (!allow_exterior_ || problem_.num_inequalities() != 1) return std::nullopt;
    // Outside the feasible set the single constraint's own gradient drives
    // the iteration, which continues the interior field ∇Φ/|∇Φ| = ∇g/|∇g|.
    p.barrier = std::numeric_limits<double>::infinity();
    p.grad_barrier = problem_.inequalities.front().gradient(x);
    p.interior = false;
    return p;
  }
  p.barrier = b.value;
  p.grad_barrier = std::move(b.gradient);
  return p;
}

double ProblemModel::max_constraint(const Vec& x) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& c : problem_.inequalities) worst = std::max(worst, c.value(x));
  return worst;
}

double fixed_length_step(double beta, const Vec& s) {
  const double ns = s.norm();
  if (!(ns > 0.0)) {
    throw Error(ErrorCode::kZeroDirection, "search direction vanishes");
  }
  return beta / ns;
}

bool restart_check(std::span<const double> history, double slowdown_tol) {
  if (history.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "restart_check needs at least two samples");
  }
  const double prev = history[history.size() - 2];
  const double last = history.back();
  if (last > prev) return true;
  const double denom = std::max(std::abs(prev), std::numeric_limits<double>::min());
  return (prev - last) / denom < slowdown_tol;
}

double objective_error(double f_found, double f_ref) {
  return std::abs(f_ref - f_found) / (1.0 + std::abs(f_ref));
}

DirectionOutput model_direction(const SolverModel& model,
                                const ModelPoint& point, double zeta,
                                double zero_tol) {
  if (const EqualityProjector* proj = model.projector()) {
    return projected_gdam_direction(point.grad_f, point.grad_barrier, zeta,
                                    *proj, zero_tol);
  }
  return gdam_direction(point.grad_f, point.grad_barrier, zeta, zero_tol);
}

namespace {

class Engine {
 public:
  Engine(const SolverModel& model, const SolverConfig& config, bool accelerated)
      : model_(model),
        config_(config),
        momentum_(accelerated ? config.momentum : 0.0),
        restarts_enabled_(accelerated && config.restart.enabled) {}

  SolveResult run(const Vec& x0);

 private:
  bool stationary(const ModelPoint& p) const {
    return p.grad_f.norm() <= config_.zero_grad_tol * (1.0 + std::abs(p.f));
  }
  CentralityDiagnostics diagnostics_at(const ModelPoint& p) const;
  void record(int k, const Vec& x, const ModelPoint& p, double beta);

  const SolverModel& model_;
  const SolverConfig& config_;
  double momentum_;
  bool restarts_enabled_;
  SolveResult result_;
};

CentralityDiagnostics Engine::diagnostics_at(const ModelPoint& p) const {
  CentralityDiagnostics d;
  try {
    d = model_direction(model_, p, config_.zeta, config_.barrier_zero_tol)
            .diagnostics;
  } catch (const Error&) {
    // stationary point: leave the sentinels in place
  }
  d.barrier = p.barrier;
  return d;
}

void Engine::record(int k, const Vec& x, const ModelPoint& p, double beta) {
  const CentralityDiagnostics d = diagnostics_at(p);
  result_.trajectory.push_back(TrajectoryPoint{
      k, x, p.f, model_.max_constraint(x), d.cos_theta, d.residual, beta});
}

SolveResult Engine::run(const Vec& x0) {
  config_.validate();
  if (x0.size() != model_.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "start point has wrong size");
  }
  std::optional<ModelPoint> start = model_.evaluate(x0);
  if (!start || (!start->interior && !config_.allow_exterior_start)) {
    throw Error(ErrorCode::kInfeasibleStart,
                "start point is not strictly feasible");
  }

  Vec x = x0;
  ModelPoint px = std::move(*start);
  bool armed = px.interior;
  Vec y = x;
  ModelPoint py = px;
  bool momentum_active = false;
  double beta = config_.beta;
  int k = 0;
  std::vector<double> monitor{px.f};
  bool last_recorded = false;

  if (config_.record_trajectory) record(0, x, px, beta);

  auto reset_momentum = [&] {
    if (!momentum_active) return;
    y = x;
    py = px;
    momentum_active = false;
    ++result_.stats.momentum_resets;
  };

  Termination reason = Termination::kMaxIters;
  while (true) {
    if (k >= config_.max_iters) {
      reason = Termination::kMaxIters;
      break;
    }
    if (stationary(py)) {
      if (momentum_active) {
        reset_momentum();
        continue;
      }
      reason = Termination::kStationaryObjective;
      break;
    }
    DirectionOutput dir;
    try {
      dir = model_direction(model_, py, config_.zeta, config_.barrier_zero_tol);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateObjectiveGradient) throw;
      if (momentum_active) {
        reset_momentum();
        continue;
      }
      reason = Termination::kStationaryObjective;
      break;
    }
    const double ns = dir.s.norm();
    if (!(ns > 0.0)) {
      // ζ = 1 exactly on the central path
      reason = Termination::kStationaryObjective;
      break;
    }
    const double alpha = config_.step_rule == StepRule::kFixedLength
                             ? fixed_length_step(beta, dir.s)
                             : beta;
    Vec trial = y + alpha * dir.s;

    if (armed && !model_.feasible(trial)) {
      ++result_.stats.rejected_violation;
      if (!config_.line_search) {
        reason = Termination::kBoundaryReachedNoLineSearch;
        break;
      }
      beta *= config_.tau;
      if (beta < config_.beta_min) {
        reason = Termination::kBoundaryReachedStepFloor;
        break;
      }
      continue;
    }

    const double f_trial = model_.objective(trial);
    if (!(f_trial < py.f)) {
      ++result_.stats.rejected_nondecrease;
      if (!config_.line_search) {
        reason = Termination::kStationaryObjective;
        break;
      }
      beta *= config_.tau;
      if (beta < config_.beta_min) {
        reason = Termination::kStationaryObjective;
        break;
      }
      continue;
    }

    std::optional<ModelPoint> ptrial = model_.evaluate(trial);
    if (!ptrial) {
      // outside the barrier domain despite passing the feasibility test
      ++result_.stats.rejected_violation;
      beta *= config_.tau;
      if (!config_.line_search || beta < config_.beta_min) {
        reason = Termination::kBoundaryReachedStepFloor;
        break;
      }
      continue;
    }

    ++k;
    const bool from_plain = !momentum_active;
    const double f_from = py.f;
    const Vec x_prev = std::move(x);
    x = std::move(trial);
    px = std::move(*ptrial);
    if (px.interior) {
      armed = true;
    } else {
      ++result_.stats.exterior_steps;
    }
    if (config_.observer) {
      config_.observer(IterationEvent{k, &x, px.f, f_from, beta, px.interior,
                                      from_plain});
    }
    last_recorded = false;
    if (config_.record_trajectory && k % config_.trajectory_stride == 0) {
      record(k, x, px, beta);
      last_recorded = true;
    }

    bool restart = false;
    if (restarts_enabled_ && k % config_.restart.monitor_period == 0) {
      monitor.push_back(px.f);
      if (restart_check(monitor, config_.restart.slowdown_tol)) {
        restart = true;
        ++result_.restarts;
        beta *= config_.restart.kappa;
      }
    }

    if (momentum_ == 0.0 || restart) {
      y = x;
      py = px;
      momentum_active = false;
      continue;
    }
    Vec y_next = x + momentum_ * (x - x_prev);
    std::optional<ModelPoint> pnext;
    if (!armed || model_.feasible(y_next)) pnext = model_.evaluate(y_next);
    if (!pnext || (armed && !pnext->interior)) {
      // extrapolated point left the feasible set
      ++result_.stats.rejected_violation;
      ++result_.stats.momentum_resets;
      y = x;
      py = px;
      momentum_active = false;
      if (!config_.line_search) {
        reason = Termination::kBoundaryReachedNoLineSearch;
        break;
      }
      beta *= config_.tau;
      if (beta < config_.beta_min) {
        reason = Termination::kBoundaryReachedStepFloor;
        break;
      }
      continue;
    }
    y = std::move(y_next);
    py = std::move(*pnext);
    momentum_active = true;
  }

  if (config_.record_trajectory && !last_recorded && k > 0) record(k, x, px, beta);
  result_.x = x;
  result_.f = px.f;
  result_.diagnostics = diagnostics_at(px);
  result_.iterations = k;
  result_.termination = reason;
  result_.final_beta = beta;
  return std::move(result_);
}

}  // namespace

SolveResult vanilla_solve(const SolverModel& model, const SolverConfig& config,
                          const Vec& x0) {
  return Engine(model, config, false).run(x0);
}

SolveResult vanilla_solve(const Problem& problem, const SolverConfig& config,
                          const Vec& x0) {
  ProblemModel model(problem, config.allow_exterior_start);
  return vanilla_solve(model, config, x0);
}

SolveResult accelerated_solve(const SolverModel& model,
                              const SolverConfig& config, const Vec& y0) {
  return Engine(model, config, true).run(y0);
}

SolveResult accelerated_solve(const Problem& problem,
                              const SolverConfig& config, const Vec& y0) {
  ProblemModel model(problem, config.allow_exterior_start);
  return accelerated_solve(model, config, y0);
}

}  // namespace gdam
