#include "gdam/linalg.hpp"

#include <cmath>
#include <string>

namespace gdam {

SparseMat sparse_from_triplets(int rows, int cols,
                               const std::vector<Triplet>& triplets) {
  for (const auto& t : triplets) {
    if (t.row() < 0 || t.row() >= rows || t.col() < 0 || t.col() >= cols) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "triplet (" + std::to_string(t.row()) + ", " +
                      std::to_string(t.col()) + ") outside matrix bounds");
    }
  }
  SparseMat m(rows, cols);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

Mat SpdFactor::inverse() const {
  return llt_.solve(Mat::Identity(size(), size()));
}

double SpdFactor::log_det() const {
  const auto& L = llt_.matrixLLT();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) sum += std::log(L(i, i));
  return 2.0 * sum;
}

double SpdFactor::min_pivot() const {
  const auto& L = llt_.matrixLLT();
  if (L.rows() == 0) return 0.0;
  return L.diagonal().array().square().minCoeff();
}

SpdFactorResult spd_factorize(const Mat& M) {
  if (M.rows() != M.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not square");
  }
  const double scale = M.cwiseAbs().maxCoeff();
  if (M.size() > 0 && (M - M.transpose()).cwiseAbs().maxCoeff() >
                          1e-10 * std::max(1.0, scale)) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not symmetric");
  }
  SpdFactorResult result;
  Eigen::LLT<Mat> llt(M);
  const auto& L = llt.matrixLLT();
  if (llt.info() == Eigen::Success && L.diagonal().allFinite() &&
      (L.diagonal().array() > 0.0).all()) {
    result.factor.emplace(std::move(llt));
    return result;
  }
  // Failure path only: locate the first bad pivot.
  Mat work = M;
  const Eigen::Index failed =
      Eigen::internal::llt_inplace<double, Eigen::Lower>::blocked(work);
  Eigen::Index bad = failed >= 0 ? failed : 0;
  if (failed < 0) {
    for (; bad < work.rows(); ++bad) {
      const double d = work(bad, bad);
      if (!std::isfinite(d) || d <= 0.0) break;
    }
  }
  result.failing_pivot = static_cast<long>(bad);
  return result;
}

EqualityProjector::EqualityProjector(int n) : p_(0), n_(n), A_(0, n) {}

EqualityProjector::EqualityProjector(const SparseMat& A)
    : p_(static_cast<int>(A.rows())), n_(static_cast<int>(A.cols())), A_(A) {
  if (p_ > n_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "equality block has more rows than variables");
  }
  if (p_ == 0) return;
  const Mat gram = Mat(A_ * A_.transpose());
  const double max_diag = gram.diagonal().maxCoeff();
  Eigen::LLT<Mat> llt(gram);
  if (llt.info() != Eigen::Success || !(max_diag > 0.0)) {
    throw Error(ErrorCode::kRankDeficient, "AAᵀ is not positive definite");
  }
  const auto& L = llt.matrixLLT();
  for (int i = 0; i < p_; ++i) {
    if (L(i, i) * L(i, i) < 1e-12 * max_diag) {
      throw Error(ErrorCode::kRankDeficient,
                  "equality rows are linearly dependent", i);
    }
  }
  gram_.emplace(std::move(llt));
}

Vec EqualityProjector::project(const Vec& v) const {
  if (v.size() != n_) {
    throw Error(ErrorCode::kDimensionMismatch, "vector size differs from n");
  }
  if (!gram_) return v;
  const Vec w = gram_->solve(A_ * v);
  return v - A_.transpose() * w;
}

Vec EqualityProjector::least_norm_solution(const Vec& b) const {
  if (b.size() != p_) {
    throw Error(ErrorCode::kDimensionMismatch, "rhs size differs from p");
  }
  if (!gram_) return Vec::Zero(n_);
  return A_.transpose() * gram_->solve(b);
}

Vec project(const EqualityProjector& projector, const Vec& v) {
  return projector.project(v);
}

EqualityProjector build_projector(const SparseMat& A) {
  return EqualityProjector(A);
}

}  // namespace gdam
