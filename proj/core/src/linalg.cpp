#include "rigidswap/linalg.hpp"

#include <algorithm>
#include <utility>

namespace rigidswap {

namespace {

Eigen::JacobiSVD<Eigen::MatrixXd> full_svd(const Eigen::MatrixXd& a) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
}

int rank_from_values(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  const double cutoff = rel_tol * sv(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++r;
  return r;
}

}  // namespace

RankDecision numeric_rank_decision(const Eigen::MatrixXd& a, double rel_tol) {
  RankDecision d;
  if (a.rows() == 0 || a.cols() == 0) return d;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const Eigen::VectorXd& sv = svd.singularValues();
  d.sigma_max = sv(0);
  d.rank = rank_from_values(sv, rel_tol);
  if (d.sigma_max > 0.0) {
    d.smallest_kept = d.rank > 0 ? sv(d.rank - 1) / d.sigma_max : 0.0;
    d.largest_dropped = d.rank < sv.size() ? sv(d.rank) / d.sigma_max : 0.0;
  }
  return d;
}

int numeric_rank(const Eigen::MatrixXd& a, double rel_tol) { return numeric_rank_decision(a, rel_tol).rank; }

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol) {
  if (a.cols() == 0) return Eigen::MatrixXd(0, 0);
  if (a.rows() == 0) return Eigen::MatrixXd::Identity(a.cols(), a.cols());
  auto svd = full_svd(a);
  const int r = rank_from_values(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(a.cols() - r);
}

Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& a, double rel_tol) {
  return null_space(a.transpose(), rel_tol);
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.cols() == 0) return Eigen::VectorXd(0);
  return a.completeOrthogonalDecomposition().solve(b);
}

ExactMatrix to_exact(const Eigen::MatrixXd& a) {
  ExactMatrix m(a.rows(), std::vector<mpq_class>(a.cols()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) m[i][j] = mpq_class(a(i, j));
  return m;
}

int exact_rank(ExactMatrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const mpq_class factor = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

mpq_class exact_determinant(ExactMatrix m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(m[pivot][col]) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      const mpq_class factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

}  // namespace rigidswap
