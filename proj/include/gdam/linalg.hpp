#pragma once

#include <Eigen/Cholesky>

#include <optional>
#include <vector>

#include "gdam/core.hpp"

namespace gdam {

/// Coordinate entry (row, col, value), 0-indexed. Duplicates are summed.
using Triplet = Eigen::Triplet<double>;

SparseMat sparse_from_triplets(int rows, int cols,
                               const std::vector<Triplet>& triplets);

/// Cholesky factorization of a symmetric positive-definite matrix.
class SpdFactor {
 public:
  explicit SpdFactor(Eigen::LLT<Mat> llt) : llt_(std::move(llt)) {}

  Vec solve(const Vec& rhs) const { return llt_.solve(rhs); }
  Mat solve(const Mat& rhs) const { return llt_.solve(rhs); }
  Mat inverse() const;
  /// log det M = Σ 2 log L_ii.
  double log_det() const;
  /// Smallest diagonal pivot L_ii² of the factorization.
  double min_pivot() const;
  int size() const { return static_cast<int>(llt_.rows()); }
  const Eigen::LLT<Mat>& llt() const { return llt_; }

 private:
  Eigen::LLT<Mat> llt_;
};

/// Outcome of spd_factorize. Failure is a normal result: callers use it to
/// detect leaving the positive-definite cone.
struct SpdFactorResult {
  std::optional<SpdFactor> factor;
  /// Index of the first non-positive pivot when factorization failed.
  long failing_pivot = -1;

  explicit operator bool() const { return factor.has_value(); }
};

/// Factorizes a symmetric matrix (lower triangle is read). Throws
/// Error(kInvalidArgument) if M is not square or is asymmetric beyond 1e-10
/// relative to its largest entry.
SpdFactorResult spd_factorize(const Mat& M);

/// Orthogonal projector onto null(A), P = I - Aᵀ(AAᵀ)⁻¹A, applied through a
/// factorization of AAᵀ; the n×n matrix is never formed.
class EqualityProjector {
 public:
  /// Identity projector on R^n (no equality rows).
  explicit EqualityProjector(int n);
  /// Throws Error(kRankDeficient) when AAᵀ has a pivot below
  /// 1e-12 · max diag(AAᵀ), Error(kDimensionMismatch) when p > n.
  explicit EqualityProjector(const SparseMat& A);

  Vec project(const Vec& v) const;
  /// Minimum-norm solution Aᵀ(AAᵀ)⁻¹b of Ax = b.
  Vec least_norm_solution(const Vec& b) const;

  int rows() const { return p_; }
  int cols() const { return n_; }
  const SparseMat& matrix() const { return A_; }

 private:
  int p_ = 0;
  int n_ = 0;
  SparseMat A_;
  std::optional<Eigen::LLT<Mat>> gram_;
};

Vec project(const EqualityProjector& projector, const Vec& v);

EqualityProjector build_projector(const SparseMat& A);

}  // namespace gdam
