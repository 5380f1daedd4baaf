#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "gdam/core.hpp"
#include "gdam/solver.hpp"

namespace gdam {

/// f = ½|x|², g = -x₂ + 10 <= 0. KKT point (0, 10), f★ = 50.
Problem analytic_2d_problem();

/// f = 1.5x₁² + x₂² - 2x₁x₂ + 2x₁³ + 0.5x₁⁴, g = x₁² - x₂ - 2.2 <= 0.
Problem nonconvex_2d_problem();

/// Closed-form trajectory of the GDAM field for the analytic problem:
/// x₂ + |x| = 2x̄₂ |x₁/x₁⁰|^{1-ζ}.
struct AnalyticTrajectory {
  double zeta = 0.0;
  Vec x0;
  /// x̄₂ = ½(x₂⁰ + |x⁰|)
  double xbar2 = 0.0;

  /// Throws Error(kDomainError) if x₁⁰ = 0.
  static AnalyticTrajectory make(double zeta, const Vec& x0);

  /// Solves the trajectory equation for x₂ at a given x₁ (x₁ ≠ 0).
  double x2_at(double x1) const;
};

/// x₂ + |x| - 2x̄₂|x₁/x₁⁰|^{1-ζ}; zero on the trajectory.
double trajectory_defect(const AnalyticTrajectory& traj, const Vec& point);

/// Point of Γ^ζ with maximal x₂: satisfies both the trajectory equation and
/// x₂ = ζ|x|. Throws Error(kDomainError) unless ζ ∈ (0,1) and x₁⁰ ≠ 0.
Vec trajectory_apex(double zeta, const Vec& x0);

/// (x̄₂/ζ)√(1-ζ²): upper bound on both |x₁| at the apex and the distance of
/// the boundary solution point from (0, 10).
double apex_distance_bound(double zeta, const Vec& x0);

/// Reference values of the vanilla runs with ζ = 0.98.
struct CecReference {
  double stepsize = 0.0;
  int iterations = 0;
  double f_star = 0.0;
  double f_found = 0.0;
  double error = 0.0;
};

struct CecInfo {
  std::string id;
  Vec lower;
  Vec upper;
  CecReference reference;
};

/// Ids with a definition: G01, G04, G06, G08, G24.
std::vector<std::string> cec_ids();

/// Throws Error(kUnknownProblemId).
Problem cec_problem(std::string_view id);
CecInfo cec_info(std::string_view id);

/// Uniform sample in the bound box, redrawn until strictly feasible and at
/// least `min_distance` (relative to the box diagonal) from `away_from`
/// when that is given.
Vec cec_random_start(std::string_view id, std::uint64_t seed,
                     const Vec* away_from = nullptr,
                     double min_distance = 0.0);

/// Known optimizer of the shipped CEC problems.
Vec cec_optimum(std::string_view id);

/// min ½xᵀHx + cᵀx + c₀ s.t. Ax = b, l <= x <= u.
struct QpProblem {
  std::string name = "qp";
  int n = 0;
  int p = 0;
  SparseMat H;
  Vec c;
  double c0 = 0.0;
  SparseMat A;
  Vec b;
  Vec l;
  Vec u;
};

/// Reads the line-oriented QP text format. Throws Error(kParseError) with
/// the line number as index, Error(kDimensionMismatch) on inconsistent sizes.
QpProblem parse_qp(std::istream& in);
QpProblem read_qp_file(const std::string& path);
/// Writes the text format with 17 significant digits.
void write_qp(std::ostream& out, const QpProblem& qp);
void write_qp_file(const std::string& path, const QpProblem& qp);

/// Problem view of a QP: finite bounds become inequalities, Ax = b the
/// equality block.
Problem qp_to_problem(const QpProblem& qp);
Problem load_qp(const std::string& path);

double qp_objective(const QpProblem& qp, const Vec& x);

/// Strictly interior point of {Ax = b, l < x < u}. Starts from the bound-box
/// midpoint mapped onto Ax = b and, if that leaves the box, alternates
/// projections onto the manifold and a shrinking inner box. Throws
/// Error(kInfeasibleStart) after 60 halvings of the inner margin.
Vec qp_feasible_start(const QpProblem& qp);

/// Accelerated settings for QPs: ζ = 0.999, τ = 0.3, backtracking,
/// restarts, update β·s, at most 10000 iterations.
SolverConfig qp_solver_config();

/// Random strictly convex QP with n variables, p equality rows, box bounds
/// and a strictly feasible point.
QpProblem random_qp(int n, int p, std::uint64_t seed);

}  // namespace gdam
