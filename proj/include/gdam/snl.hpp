#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "gdam/core.hpp"
#include "gdam/linalg.hpp"
#include "gdam/solver.hpp"

namespace gdam {

using Mat2 = Eigen::Matrix2d;

/// Measured distance between sensors i and j (i < j).
struct SensorEdge {
  int i = 0;
  int j = 0;
  double d = 0.0;
};

/// Measured distance between anchor k and sensor j.
struct AnchorEdge {
  int k = 0;
  int j = 0;
  double d = 0.0;
};

struct SnlInstance {
  int n = 0;
  /// 2 × K anchor coordinates.
  Mat anchors;
  /// 2 × n true positions; zero columns when unknown.
  Mat sensors;
  std::vector<SensorEdge> ss;
  std::vector<AnchorEdge> sa;
  double radius = 0.0;
  std::uint64_t seed = 0;
  /// Geometry has been multiplied by this factor; positions are reported
  /// after dividing by it.
  double scale = 1.0;

  int num_edges() const { return static_cast<int>(ss.size() + sa.size()); }
  bool has_truth() const { return sensors.cols() == n && n > 0; }
};

struct GenerateOptions {
  int n_anchors = 4;
  /// Uniform anchors instead of the fixed (±0.45, ±0.45) corners.
  bool random_anchors = false;
  /// Multiplicative distance noise d·(1 + noise·N(0,1)); 0 reproduces the
  /// noiseless setting.
  double noise = 0.0;
};

/// Sensors uniform on [-0.5, 0.5]², every pair within distance r recorded.
SnlInstance generate_instance(int n, double r, std::uint64_t seed,
                              const GenerateOptions& options = {});

/// True when every sensor is linked to some anchor through measured edges.
/// An instance for which this fails is the "disconnected" warning case.
bool is_connected(const SnlInstance& inst);

/// Multiplies anchors, positions and distances by `scale`.
SnlInstance presolve_scale(const SnlInstance& inst, double scale = 10.0);

// Dual variables are packed as v = (V11, V12, V22, y_ss..., y_sa...).

int dual_dimension(const SnlInstance& inst);
Mat2 dual_V(const Vec& v);
Vec pack_dual(const Mat2& V, const Vec& y);

/// S = -[V 0; 0 0] - Σ y_ij M_ij - Σ y_kj M̄_kj. Throws
/// Error(kIndexMismatch) if y does not have one entry per edge.
Mat assemble_slack(const SnlInstance& inst, const Vec& y, const Mat2& V);
Mat assemble_slack(const SnlInstance& inst, const Vec& v);

/// Negated dual objective F(v) = -(V11 + V22 + Σ y d²) and its constant
/// gradient.
struct LinearObjective {
  double value = 0.0;
  Vec gradient;
};
LinearObjective dual_objective(const SnlInstance& inst, const Vec& v);

/// -log det S with gradient (S⁻¹₁₁, 2S⁻¹₁₂, S⁻¹₂₂, ⟨S⁻¹, M_e⟩...).
struct LogDetBarrier {
  double value = 0.0;
  Vec gradient;
  /// Smallest pivot of the Cholesky factor of S.
  double min_pivot = 0.0;
};
/// Throws Error(kNotPositiveDefinite) if S is not positive definite.
LogDetBarrier dual_barrier(const SnlInstance& inst, const Vec& v);

/// Barrier gradient entries from a known S⁻¹ (or any symmetric matrix W):
/// (W₁₁, 2W₁₂, W₂₂, uₑᵀWuₑ).
Vec slack_gradient(const SnlInstance& inst, const Mat& W);

/// The dual as a solver model: objective F, single PD-cone constraint with
/// barrier -log det S. Not thread-safe (caches the last factorization).
class SnlDualModel final : public SolverModel {
 public:
  explicit SnlDualModel(const SnlInstance& inst);

  int dimension() const override { return dual_dimension(inst_); }
  bool feasible(const Vec& v) const override;
  double objective(const Vec& v) const override;
  std::optional<ModelPoint> evaluate(const Vec& v) const override;
  /// Number of Cholesky factorizations performed so far.
  long factorizations() const { return factorizations_; }

 private:
  const SpdFactorResult& factor(const Vec& v) const;

  const SnlInstance& inst_;
  Vec grad_f_;
  mutable Vec cached_v_;
  mutable SpdFactorResult cached_;
  mutable long factorizations_ = 0;
};

struct Phase1Options {
  double lambda = 10.0;
  int budget = 500;
};

struct Phase1Result {
  Vec v;
  int steps = 0;
};

/// Gradient descent on -log det(λI + S(v)) from v = 0 until S(v) is
/// positive definite. Throws Error(kInvalidArgument) for λ <= 0 and
/// Error(kPhase1Failure) when the budget runs out.
Phase1Result phase1_initialize(const SnlInstance& inst,
                               const Phase1Options& options = {});

struct SnlConfig {
  /// Settings of the accelerated main solve.
  SolverConfig main = default_main();
  bool polish = true;
  /// Polish run: ζ = 1, floor 1e-10, at most 200 iterations.
  SolverConfig polish_config = default_polish();
  double presolve = 10.0;
  Phase1Options phase1;
  int refine_max_iters = 20000;

  static SolverConfig default_main();
  static SolverConfig default_polish();
};

struct DualState {
  Vec v;
  Mat S;
  double objective = 0.0;
  double min_pivot = 0.0;
  SolveResult solve;
};

/// Accelerated GDAM on the dual from a strictly feasible v0.
DualState snl_main_solve(const SnlInstance& inst, const Vec& v0,
                         const SolverConfig& config);

struct LocalizationResult {
  bool localizable = true;
  /// Normalized primal matrix with Z[0:2, 0:2] = I.
  Mat Z;
  /// 2 × n estimates in the instance's original units.
  Mat X;
  Mat X_refined;
  double rmsd_sdp = std::numeric_limits<double>::quiet_NaN();
  double rmsd_refined = std::numeric_limits<double>::quiet_NaN();
  double rank_proxy = std::numeric_limits<double>::quiet_NaN();
  double eta = 0.0;
  double dual_objective = 0.0;
  double min_pivot = 0.0;
  int phase1_steps = 0;
  int iterations = 0;
  int restarts = 0;
  int polish_iterations = 0;
  int refine_iterations = 0;
  Termination termination = Termination::kMaxIters;
  double runtime_seconds = 0.0;
};

/// Optional ζ = 1 polish, then Z = ηS⁻¹ with η = ζ|∇F|/|∇Φ| at the final
/// point, normalized by the congruence with B^{-1/2} (B the top-left 2×2
/// block of Z). `inst` is the (scaled) instance the dual was solved on.
LocalizationResult postsolve_recover(const SnlInstance& inst,
                                     const DualState& state,
                                     const SnlConfig& config);

/// Gradient descent with Armijo backtracking on
/// Σ (|xᵢ - xⱼ|² - d²)² + Σ (|xⱼ - aₖ|² - d²)².
struct RefineResult {
  Mat X;
  int iterations = 0;
  double residual = 0.0;
};
RefineResult refine_positions(const SnlInstance& inst, const Mat& X0,
                              int max_iters = 20000);

/// (1/n Σ |xᵢ - xᵢ_true|²)^{1/2}
double rmsd(const Mat& X, const Mat& X_true);

/// Presolve, phase I, main solve, postsolve and refinement.
LocalizationResult localize(const SnlInstance& inst, const SnlConfig& config = {});

/// Sectioned text format, 17 significant digits.
void write_instance(std::ostream& out, const SnlInstance& inst);
SnlInstance read_instance(std::istream& in);
void write_instance_file(const std::string& path, const SnlInstance& inst);
SnlInstance read_instance_file(const std::string& path);

/// Key/value lines (timings excluded) followed by a position table
/// (j, x, y, x_refined, y_refined, x_true, y_true).
void write_result(std::ostream& out, const SnlInstance& inst,
                  const LocalizationResult& result);

struct StoredResult {
  std::vector<std::pair<std::string, std::string>> values;
  Mat X;
  Mat X_refined;
  Mat X_true;
};
StoredResult read_result(std::istream& in);

}  // namespace gdam
