#pragma once

#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace rigidswap {

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kDefaultRankTolerance = 1e-9;

struct RankDecision {
  int rank = 0;
  double sigma_max = 0.0;
  /// Smallest singular value counted as nonzero and largest counted as zero,
  /// relative to sigma_max. A narrow gap means the verdict is ambiguous.
  double smallest_kept = 0.0;
  double largest_dropped = 0.0;
};

RankDecision numeric_rank_decision(const Eigen::MatrixXd& a, double rel_tol = kDefaultRankTolerance);
int numeric_rank(const Eigen::MatrixXd& a, double rel_tol = kDefaultRankTolerance);

/// Orthonormal basis (as columns) of { x : a x = 0 }.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol = kDefaultRankTolerance);

/// Orthonormal basis (as columns) of { y : yᵀ a = 0 }.
Eigen::MatrixXd left_null_space(const Eigen::MatrixXd& a, double rel_tol = kDefaultRankTolerance);

/// Minimum-norm least-squares solution of a x = b.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

using ExactMatrix = std::vector<std::vector<mpq_class>>;

ExactMatrix to_exact(const Eigen::MatrixXd& a);

/// Rank over the rationals by Gaussian elimination with exact pivots.
int exact_rank(ExactMatrix m);

/// Determinant of a square rational matrix.
mpq_class exact_determinant(ExactMatrix m);

}  // namespace rigidswap
