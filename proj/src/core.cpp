#include "gdam/core.hpp"

#include <algorithm>
#include <cmath>

namespace gdam {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kBoundaryViolation:
      return "BoundaryViolation";
    case ErrorCode::kDegenerateObjectiveGradient:
      return "DegenerateObjectiveGradient";
    case ErrorCode::kDegenerateGeometry:
      return "DegenerateGeometry";
    case ErrorCode::kRankDeficient:
      return "RankDeficient";
    case ErrorCode::kNotPositiveDefinite:
      return "NotPositiveDefinite";
    case ErrorCode::kZeroDirection:
      return "ZeroDirection";
    case ErrorCode::kInfeasibleStart:
      return "InfeasibleStart";
    case ErrorCode::kUnknownProblemId:
      return "UnknownProblemId";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kDomainError:
      return "DomainError";
    case ErrorCode::kIndexMismatch:
      return "IndexMismatch";
    case ErrorCode::kPhase1Failure:
      return "Phase1Failure";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
  }
  return "Unknown";
}

BarrierEval evaluate_barrier(const Problem& problem, const Vec& x) {
  BarrierEval out;
  out.gradient = Vec::Zero(problem.dimension);
  for (int i = 0; i < problem.num_inequalities(); ++i) {
    const auto& c = problem.inequalities[i];
    const double g = c.value(x);
    if (!(g < 0.0)) {
      out.violated = i;
      return out;
    }
    out.value -= std::log(-g);
    out.gradient += c.gradient(x) / (-g);
  }
  return out;
}

bool strictly_feasible(const Problem& problem, const Vec& x) {
  for (const auto& c : problem.inequalities) {
    if (!(c.value(x) < 0.0)) return false;
  }
  return true;
}

namespace {

[[noreturn]] void throw_violation(int index) {
  throw Error(ErrorCode::kBoundaryViolation,
              "constraint " + std::to_string(index) + " is not strictly satisfied",
              index);
}

}  // namespace

double barrier_value(const Problem& problem, const Vec& x) {
  const BarrierEval e = evaluate_barrier(problem, x);
  if (e.violated) throw_violation(*e.violated);
  return e.value;
}

Vec barrier_gradient(const Problem& problem, const Vec& x) {
  BarrierEval e = evaluate_barrier(problem, x);
  if (e.violated) throw_violation(*e.violated);
  return std::move(e.gradient);
}

FeasibilityStatus classify_feasibility(const Problem& problem, const Vec& x,
                                       double boundary_tol) {
  FeasibilityStatus status;
  for (int i = 0; i < problem.num_inequalities(); ++i) {
    const double g = problem.inequalities[i].value(x);
    // strict comparison keeps the lowest index on ties
    if (status.worst_index < 0 || g > status.worst_value) {
      status.worst_index = i;
      status.worst_value = g;
    }
  }
  if (status.worst_index < 0 || status.worst_value < -boundary_tol) {
    status.cls = FeasibilityClass::kStrictlyInterior;
  } else if (std::abs(status.worst_value) <= boundary_tol) {
    status.cls = FeasibilityClass::kOnBoundary;
  } else {
    status.cls = FeasibilityClass::kInfeasible;
  }
  return status;
}

bool barrier_gradient_is_zero(double grad_f_norm, double grad_barrier_norm,
                              double zero_tol) {
  return grad_barrier_norm <= zero_tol * std::max(1.0, grad_f_norm);
}

CentralityDiagnostics centrality(const Vec& grad_f, const Vec& grad_barrier,
                                 double zeta, double zero_tol) {
  const double nf = grad_f.norm();
  if (!(nf > 0.0)) {
    throw Error(ErrorCode::kDegenerateObjectiveGradient,
                "objective gradient vanishes");
  }
  CentralityDiagnostics d;
  const double nb = grad_barrier.norm();
  if (barrier_gradient_is_zero(nf, nb, zero_tol)) return d;
  d.cos_theta = std::clamp(grad_f.dot(grad_barrier) / (nf * nb), -1.0, 1.0);
  d.residual = (grad_f / nf + grad_barrier / nb).norm();
  d.eta = zeta * nf / nb;
  return d;
}

}  // namespace gdam
