#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gdam/core.hpp"
#include "gdam/direction.hpp"
#include "gdam/linalg.hpp"

namespace gdam {

/// How the search direction is scaled into an update.
enum class StepRule {
  /// α = β/|s|, every accepted update has Euclidean length β.
  kFixedLength,
  /// α = β, the update is β·s. Used by the SNL dual solver, where the
  /// shrinking |s| near the central path acts as a natural step control.
  kScaled,
};

struct RestartConfig {
  bool enabled = false;
  /// On restart β ← κ·β.
  double kappa = 2.0;
  /// Objective is sampled every this many accepted iterations.
  int monitor_period = 25;
  /// Relative decrease between consecutive samples below which the run is
  /// considered stalled.
  double slowdown_tol = 1e-6;
};

/// Reported for every accepted iterate when SolverConfig::observer is set.
struct IterationEvent {
  int k = 0;
  const Vec* x = nullptr;
  double f = 0.0;
  double previous_f = 0.0;
  double beta = 0.0;
  /// False while an exterior start has not yet entered the feasible set.
  bool interior = true;
  /// True when this iterate was produced right after a restart or a
  /// momentum reset, i.e. from a plain GDAM step off x_{k-1}.
  bool from_plain_step = true;
};

struct SolverConfig {
  double zeta = 0.98;
  /// Initial step parameter (a length for kFixedLength, a multiplier for
  /// kScaled).
  double beta = 0.2;
  double beta_min = 1e-8;
  /// Backtracking factor applied to β when a trial point is rejected.
  double tau = 0.3;
  /// When false, the first constraint violation ends the run.
  bool line_search = false;
  double momentum = 0.9;
  int max_iters = 10000;
  RestartConfig restart;
  StepRule step_rule = StepRule::kFixedLength;
  bool record_trajectory = false;
  /// Record every this many iterates; the final iterate is always recorded.
  int trajectory_stride = 1;
  /// Stop when |∇f| <= zero_grad_tol · (1 + |f|).
  double zero_grad_tol = 1e-10;
  /// Relative tolerance for treating |∇Φ| as zero.
  double barrier_zero_tol = kBarrierZeroTol;
  /// Admit an infeasible start for single-constraint problems. Until the
  /// iterate first becomes strictly feasible the constraint gradient ∇g is
  /// used in place of ∇Φ and violations are not checked.
  bool allow_exterior_start = false;
  std::function<void(const IterationEvent&)> observer;

  /// Throws Error(kInvalidArgument) on inconsistent settings.
  void validate() const;
};

enum class Termination {
  kBoundaryReachedStepFloor,
  kBoundaryReachedNoLineSearch,
  kMaxIters,
  kStationaryObjective,
};

std::string_view to_string(Termination t);

inline bool is_boundary(Termination t) {
  return t == Termination::kBoundaryReachedStepFloor ||
         t == Termination::kBoundaryReachedNoLineSearch;
}

struct TrajectoryPoint {
  int k = 0;
  Vec x;
  double f = 0.0;
  double max_g = 0.0;
  double cos_theta = 0.0;
  double residual = 0.0;
  double beta = 0.0;
};

struct SolveStats {
  int rejected_violation = 0;
  int rejected_nondecrease = 0;
  int momentum_resets = 0;
  /// Accepted iterates taken before an exterior start entered the feasible
  /// set.
  int exterior_steps = 0;
};

struct SolveResult {
  /// Last accepted iterate, the solution point x♯.
  Vec x;
  double f = 0.0;
  CentralityDiagnostics diagnostics;
  int iterations = 0;
  int restarts = 0;
  Termination termination = Termination::kMaxIters;
  double final_beta = 0.0;
  SolveStats stats;
  std::vector<TrajectoryPoint> trajectory;
};

/// Objective and barrier evaluated at one strictly feasible point.
struct ModelPoint {
  double f = 0.0;
  Vec grad_f;
  double barrier = 0.0;
  /// ∇Φ in the interior; ∇g for an exterior single-constraint point.
  Vec grad_barrier;
  bool interior = true;
};

/// What the GDAM iterations need from a problem. Implemented for Problem
/// (log barrier over g_i) and by the SNL dual (log-det barrier).
class SolverModel {
 public:
  virtual ~SolverModel() = default;
  virtual int dimension() const = 0;
  /// Strict feasibility of a trial point.
  virtual bool feasible(const Vec& x) const = 0;
  virtual double objective(const Vec& x) const = 0;
  /// Returns nullopt when x is outside the barrier's domain.
  virtual std::optional<ModelPoint> evaluate(const Vec& x) const = 0;
  /// Projector onto the equality manifold, or nullptr.
  virtual const EqualityProjector* projector() const { return nullptr; }
  /// max_i g_i(x) for trajectory records; NaN when not meaningful.
  virtual double max_constraint(const Vec& x) const;
};

/// Adapts a Problem to the solver: Φ = -Σ log(-g_i), equality handled by
/// projection.
class ProblemModel final : public SolverModel {
 public:
  explicit ProblemModel(const Problem& problem, bool allow_exterior = false);

  int dimension() const override { return problem_.dimension; }
  bool feasible(const Vec& x) const override;
  double objective(const Vec& x) const override { return problem_.objective(x); }
  std::optional<ModelPoint> evaluate(const Vec& x) const override;
  const EqualityProjector* projector() const override {
    return projector_ ? &*projector_ : nullptr;
  }
  double max_constraint(const Vec& x) const override;

 private:
  const Problem& problem_;
  bool allow_exterior_;
  std::optional<EqualityProjector> projector_;
};

/// α = β/|s|. Throws Error(kZeroDirection) if s = 0.
double fixed_length_step(double beta, const Vec& s);

/// Restart test on monitored objective samples (oldest first, >= 2 entries):
/// true if the newest sample exceeds the previous one or its relative
/// decrease is below slowdown_tol.
bool restart_check(std::span<const double> history,
                   double slowdown_tol = 1e-6);

/// |f_found - f_ref| / (1 + |f_ref|).
double objective_error(double f_found, double f_ref);

/// GDAM direction at a model point, projected when the model has equalities.
DirectionOutput model_direction(const SolverModel& model,
                                const ModelPoint& point, double zeta,
                                double zero_tol = kBarrierZeroTol);

/// Fixed-step GDAM iteration x_{k+1} = x_k + α_k s_ζ(x_k).
SolveResult vanilla_solve(const SolverModel& model, const SolverConfig& config,
                          const Vec& x0);
SolveResult vanilla_solve(const Problem& problem, const SolverConfig& config,
                          const Vec& x0);

/// Nesterov-accelerated GDAM with optional objective-monitoring restarts.
SolveResult accelerated_solve(const SolverModel& model,
                              const SolverConfig& config, const Vec& y0);
SolveResult accelerated_solve(const Problem& problem,
                              const SolverConfig& config, const Vec& y0);

}  // namespace gdam
