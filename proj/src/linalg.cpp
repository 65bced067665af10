#include "fvrlab/linalg.hpp"

#include <cmath>

#include "fvrlab/errors.hpp"

namespace fvrlab {

double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

bool is_symmetric(const Eigen::Ref<const Eigen::MatrixXd>& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = max_abs(m);
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= rel_tol * (scale > 0.0 ? scale : 1.0);
}

std::optional<Eigen::MatrixXd> sym_inverse(const Eigen::Ref<const Eigen::MatrixXd>& m,
                                           double cond_limit) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) return std::nullopt;
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double lambda_max = values.maxCoeff();
  if (!(lambda_max > 0.0)) return std::nullopt;
  const double lambda_min = values.minCoeff();
  if (lambda_min <= lambda_max / cond_limit) return std::nullopt;
  return eig.eigenvectors() * values.cwiseInverse().asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd sym_sqrt(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
  if (eig.info() != Eigen::Success) {
    throw InvalidModelError("sym_sqrt: eigendecomposition failed");
  }
  Eigen::VectorXd values = eig.eigenvalues();
  const double lambda_max = values.maxCoeff();
  const double clip = -1e-10 * (lambda_max > 0.0 ? lambda_max : 1.0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < clip) {
      throw InvalidModelError("sym_sqrt: matrix is not positive semidefinite");
    }
    values[i] = values[i] > 0.0 ? std::sqrt(values[i]) : 0.0;
  }
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd submatrix(const Eigen::Ref<const Eigen::MatrixXd>& m, const std::vector<int>& rows,
                          const std::vector<int>& cols) {
  Eigen::MatrixXd out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
    }
  }
  return out;
}

Eigen::VectorXd subvector(const Eigen::Ref<const Eigen::VectorXd>& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = v(idx[i]);
  }
  return out;
}

}  // namespace fvrlab
