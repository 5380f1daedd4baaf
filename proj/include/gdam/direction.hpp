#pragma once

#include "gdam/core.hpp"

namespace gdam {

class EqualityProjector;

enum class DirectionBranch {
  /// -∇f/|∇f| - ζ ∇Φ/|∇Φ|
  kCombined,
  /// -∇f, taken when ∇Φ vanishes
  kGradientDescentSafeguard,
};

struct DirectionOutput {
  Vec s;
  DirectionBranch branch = DirectionBranch::kCombined;
  /// Populated on the combined branch only.
  CentralityDiagnostics diagnostics;
};

/// GDAM search direction for gradients of the objective and the barrier.
///
/// ζ must lie in [0, 1]; ζ = 1 is admitted for polishing runs, where the
/// direction vanishes on the central path and the descent guarantee is lost.
DirectionOutput gdam_direction(const Vec& grad_f, const Vec& grad_barrier,
                               double zeta,
                               double zero_tol = kBarrierZeroTol);

/// Same direction with both gradients first projected onto null(A).
DirectionOutput projected_gdam_direction(const Vec& grad_f,
                                         const Vec& grad_barrier, double zeta,
                                         const EqualityProjector& projector,
                                         double zero_tol = kBarrierZeroTol);

/// Modified search direction built from the two right singular vectors of
/// the normalized 2×n gradient matrix, s_c = cos α₁ v₁ + c cos α₂ v₂.
///
/// Only used to cross-check gdam_direction: for c >= 1 the result is parallel
/// to the GDAM direction with ζ = (c - 1)/(c + 1).
Vec msdm_direction(const Vec& grad_f, const Vec& grad_g, double c);

}  // namespace gdam
