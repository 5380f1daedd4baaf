#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gdam/error.hpp"

namespace gdam {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SparseMat = Eigen::SparseMatrix<double>;

using ScalarFn = std::function<double(const Vec&)>;
using GradientFn = std::function<Vec(const Vec&)>;

/// One inequality constraint g(x) <= 0 with its gradient.
struct Inequality {
  ScalarFn value;
  GradientFn gradient;
};

/// Linear equality block Ax = b.
struct LinearEquality {
  SparseMat A;
  Vec b;
};

/// Differentiable problem: minimize f(x) s.t. g_i(x) <= 0, optionally Ax = b.
///
/// Oracles must be reentrant and free of side effects; solvers may call them
/// from several threads when independent solves run concurrently.
struct Problem {
  std::string name;
  int dimension = 0;
  ScalarFn objective;
  GradientFn objective_gradient;
  std::vector<Inequality> inequalities;
  std::optional<LinearEquality> equality;
  /// Known optimum, used only for error reporting.
  std::optional<double> reference_optimum;

  int num_inequalities() const {
    return static_cast<int>(inequalities.size());
  }
};

enum class FeasibilityClass { kStrictlyInterior, kOnBoundary, kInfeasible };

struct FeasibilityStatus {
  FeasibilityClass cls = FeasibilityClass::kStrictlyInterior;
  /// Index of the constraint attaining max g_i, -1 when m = 0.
  int worst_index = -1;
  double worst_value = -std::numeric_limits<double>::infinity();
};

struct CentralityDiagnostics {
  /// cos θ between ∇f and ∇Φ; NaN when |∇Φ| is treated as zero.
  double cos_theta = std::numeric_limits<double>::quiet_NaN();
  /// ε = |∇f/|∇f| + ∇Φ/|∇Φ||; NaN when |∇Φ| is treated as zero.
  double residual = std::numeric_limits<double>::quiet_NaN();
  double barrier = 0.0;
  /// η = ζ|∇f|/|∇Φ|; +inf when |∇Φ| is treated as zero.
  double eta = std::numeric_limits<double>::infinity();

  bool available() const { return cos_theta == cos_theta; }
};

/// Default relative threshold for treating |∇Φ| as zero:
/// |∇Φ| <= kBarrierZeroTol * max(1, |∇f|).
inline constexpr double kBarrierZeroTol = 1e-14;

/// Result of a non-throwing barrier evaluation.
struct BarrierEval {
  double value = 0.0;
  Vec gradient;
  /// First constraint found with g_i(x) >= 0; evaluation stops there.
  std::optional<int> violated;
};

/// Evaluates Φ(x) = -Σ log(-g_i(x)) and its gradient without throwing.
BarrierEval evaluate_barrier(const Problem& problem, const Vec& x);

/// Returns true when every g_i(x) < 0, stopping at the first violation.
bool strictly_feasible(const Problem& problem, const Vec& x);

/// Φ(x). Throws Error(kBoundaryViolation) carrying the offending index.
double barrier_value(const Problem& problem, const Vec& x);

/// ∇Φ(x) = Σ ∇g_i(x) / (-g_i(x)). Throws like barrier_value.
Vec barrier_gradient(const Problem& problem, const Vec& x);

FeasibilityStatus classify_feasibility(const Problem& problem, const Vec& x,
                                       double boundary_tol = 1e-12);

/// Throws Error(kDegenerateObjectiveGradient) if |∇f| = 0.
CentralityDiagnostics centrality(const Vec& grad_f, const Vec& grad_barrier,
                                 double zeta,
                                 double zero_tol = kBarrierZeroTol);

/// True when |∇Φ| is numerically zero relative to |∇f|.
bool barrier_gradient_is_zero(double grad_f_norm, double grad_barrier_norm,
                              double zero_tol = kBarrierZeroTol);

}  // namespace gdam
