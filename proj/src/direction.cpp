#include "gdam/direction.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "gdam/linalg.hpp"

namespace gdam {

namespace {

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "zeta must lie in [0, 1]");
  }
}

}  // namespace

DirectionOutput gdam_direction(const Vec& grad_f, const Vec& grad_barrier,
                               double zeta, double zero_tol) {
  check_zeta(zeta);
  const double nf = grad_f.norm();
  if (!(nf > 0.0)) {
    throw Error(ErrorCode::kDegenerateObjectiveGradient,
                "objective gradient vanishes");
  }
  DirectionOutput out;
  const double nb = grad_barrier.norm();
  if (barrier_gradient_is_zero(nf, nb, zero_tol)) {
    out.s = -grad_f;
    out.branch = DirectionBranch::kGradientDescentSafeguard;
    return out;
  }
  out.s = -grad_f / nf - zeta * (grad_barrier / nb);
  out.branch = DirectionBranch::kCombined;
  out.diagnostics = centrality(grad_f, grad_barrier, zeta, zero_tol);
#ifndef NDEBUG
  // <s, ∇f> = -|∇f| (1 + ζ cos θ)
  const double expected = -nf * (1.0 + zeta * out.diagnostics.cos_theta);
  assert(std::abs(out.s.dot(grad_f) - expected) <=
         1e-8 * nf * (1.0 + std::abs(expected / nf)));
#endif
  return out;
}

DirectionOutput projected_gdam_direction(const Vec& grad_f,
                                         const Vec& grad_barrier, double zeta,
                                         const EqualityProjector& projector,
                                         double zero_tol) {
  const Vec pf = projector.project(grad_f);
  // rounding leaves O(eps·|∇f|) behind when ∇f lies in the row space of A
  if (!(pf.norm() > 1e-12 * grad_f.norm())) {
    throw Error(ErrorCode::kDegenerateObjectiveGradient,
                "projected objective gradient vanishes on the equality manifold");
  }
  return gdam_direction(pf, projector.project(grad_barrier), zeta, zero_tol);
}

Vec msdm_direction(const Vec& grad_f, const Vec& grad_g, double c) {
  if (!(c >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "c must be >= 1");
  }
  const double nf = grad_f.norm();
  const double ng = grad_g.norm();
  if (!(nf > 0.0) || !(ng > 0.0)) {
    throw Error(ErrorCode::kDegenerateObjectiveGradient,
                "both gradients must be nonzero");
  }
  const Vec uf = grad_f / nf;
  const Vec ug = grad_g / ng;
  const double cos_theta = std::clamp(uf.dot(ug), -1.0, 1.0);
  if (1.0 - cos_theta * cos_theta < 1e-24) {
    throw Error(ErrorCode::kDegenerateGeometry,
                "gradients are parallel; singular vectors are undefined");
  }
  // right singular vectors of m = [uf^T; ug^T]
  const Vec v1 = (-uf + ug) / std::sqrt(2.0 - 2.0 * cos_theta);
  const Vec v2 = (-uf - ug) / std::sqrt(2.0 + 2.0 * cos_theta);
  const double cos_a1 = std::sqrt(1.0 - cos_theta) / std::sqrt(2.0);
  const double cos_a2 = std::sqrt(1.0 + cos_theta) / std::sqrt(2.0);
  return cos_a1 * v1 + c * cos_a2 * v2;
}

}  // namespace gdam
