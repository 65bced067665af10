#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace fvrlab {

// Relative cutoff under which an entry counts as zero, scaled by the largest
// absolute entry of the matrix or vector it belongs to.
inline constexpr double kZeroTolScale = 1e-8;

// Condition-number guard: symmetric matrices at or beyond this are treated as
// singular rather than inverted.
inline constexpr double kConditionLimit = 1e12;

double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m);

inline double zero_threshold(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return kZeroTolScale * max_abs(m);
}

bool is_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m, double rel_tol = 1e-12);

// Inverse of a symmetric PSD matrix through its eigendecomposition; returns
// nullopt when the condition number reaches cond_limit or an eigenvalue is
// nonpositive.
std::optional<Eigen::MatrixXd> sym_inverse(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                           double cond_limit = kConditionLimit);

// Symmetric PSD square root.  Eigenvalues slightly below zero (roundoff) are
// clipped; genuinely negative spectra throw InvalidModelError.
Eigen::MatrixXd sym_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& m);

Eigen::MatrixXd submatrix(const Eigen::Ref<const Eigen::MatrixXd>& m, const std::vector<int>& rows,
                          const std::vector<int>& cols);

Eigen::VectorXd subvector(const Eigen::Ref<const Eigen::VectorXd>& v, const std::vector<int>& idx);

}  // namespace fvrlab
