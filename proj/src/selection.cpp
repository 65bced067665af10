#include "fvrlab/selection.hpp"

#include <algorithm>
#include <boost/math/distributions/fisher_f.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fvrlab/errors.hpp"

namespace fvrlab {

namespace {

// Squared-norm ratio under which a column is treated as collinear with the
// current design.
constexpr double kCollinearRel = 1e-12;

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& m) {
  return m.rowwise() - m.colwise().mean();
}

Eigen::VectorXd center(const Eigen::VectorXd& v) {
  return v.array() - v.mean();
}

// Component of v orthogonal to the first n_basis columns of basis
// (orthonormal).  Classical Gram-Schmidt applied twice.
Eigen::VectorXd orthogonalize(const Eigen::MatrixXd& basis, int n_basis,
                              const Eigen::VectorXd& v) {
  Eigen::VectorXd z = v;
  if (n_basis > 0) {
    const auto q = basis.leftCols(n_basis);
    z -= q * (q.transpose() * z);
    z -= q * (q.transpose() * z);
  }
  return z;
}

double f_upper_tail(double f, int denominator_df) {
  const boost::math::fisher_f dist(1.0, static_cast<double>(denominator_df));
  return boost::math::cdf(boost::math::complement(dist, f));
}

}  // namespace

void Dataset::validate() const {
  if (x.rows() < 2) {
    throw std::invalid_argument("Dataset: need at least 2 rows, got " + std::to_string(x.rows()));
  }
  if (x.cols() < 1) {
    throw std::invalid_argument("Dataset: need at least 1 column");
  }
  if (y.size() != x.rows()) {
    throw std::invalid_argument("Dataset: y has length " + std::to_string(y.size()) +
                                " but x has " + std::to_string(x.rows()) + " rows");
  }
  if (!x.allFinite() || !y.allFinite()) {
    throw std::invalid_argument("Dataset: non-finite entries");
  }
}

SelectionPath forward_stepwise(const Dataset& data, int max_steps) {
  data.validate();
  const int n = data.n_rows();
  const int p = data.n_cols();
  if (max_steps < 0 || max_steps > std::min(p, n - 2)) {
    throw std::invalid_argument("forward_stepwise: max_steps must lie in [0, min(p, n-2)] = [0, " +
                                std::to_string(std::min(p, n - 2)) + "], got " +
                                std::to_string(max_steps));
  }

  const Eigen::MatrixXd xc = center_columns(data.x);
  Eigen::VectorXd residual = center(data.y);
  const double tss = residual.squaredNorm();
  Eigen::VectorXd col_norms(p);
  for (int j = 0; j < p; ++j) col_norms[j] = xc.col(j).squaredNorm();

  SelectionPath path;
  path.total_ss = tss;
  Eigen::MatrixXd basis(n, max_steps);
  std::vector<bool> in_model(static_cast<std::size_t>(p), false);
  double rss = tss;

  for (int step = 0; step < max_steps; ++step) {
    int best = -1;
    double best_reduction = 0.0;
    for (int j = 0; j < p; ++j) {
      if (in_model[static_cast<std::size_t>(j)]) continue;
      const Eigen::VectorXd z = orthogonalize(basis, step, xc.col(j));
      const double zn = z.squaredNorm();
      if (zn <= kCollinearRel * col_norms[j]) continue;
      const double dot = z.dot(residual);
      const double reduction = dot * dot / zn;
      if (reduction > best_reduction) {
        best_reduction = reduction;
        best = j;
      }
    }
    if (best < 0 || best_reduction <= 1e-12 * tss) break;

    Eigen::VectorXd z = orthogonalize(basis, step, xc.col(best));
    z /= std::sqrt(z.squaredNorm());
    const double gain = z.dot(residual);
    residual -= gain * z;
    basis.col(step) = z;
    rss = std::max(rss - gain * gain, 0.0);
    in_model[static_cast<std::size_t>(best)] = true;
    path.order.push_back(best);
    path.rss.push_back(rss);
  }
  return path;
}

PValueSequence incremental_pvalues(const SelectionPath& path, const Dataset& holdout, int k) {
  holdout.validate();
  if (k < 0 || k > path.length()) {
    throw std::invalid_argument("incremental_pvalues: k = " + std::to_string(k) +
                                " exceeds path length " + std::to_string(path.length()));
  }
  const int n = holdout.n_rows();
  if (n <= k + 1) {
    throw InsufficientHoldoutError("incremental_pvalues: holdout has " + std::to_string(n) +
                                   " rows; testing k = " + std::to_string(k) +
                                   " steps needs more than k + 1");
  }
  for (int j = 0; j < k; ++j) {
    if (path.order[static_cast<std::size_t>(j)] >= holdout.n_cols()) {
      throw std::invalid_argument("incremental_pvalues: path index " +
                                  std::to_string(path.order[static_cast<std::size_t>(j)]) +
                                  " out of range for holdout with p = " +
                                  std::to_string(holdout.n_cols()));
    }
  }

  const Eigen::MatrixXd xc = center_columns(holdout.x);
  Eigen::VectorXd residual = center(holdout.y);
  double rss_prev = residual.squaredNorm();

  PValueSequence seq;
  seq.p_values.reserve(static_cast<std::size_t>(k));
  Eigen::MatrixXd basis(n, k);
  int n_basis = 0;

  for (int j = 1; j <= k; ++j) {
    const int col = path.order[static_cast<std::size_t>(j - 1)];
    const Eigen::VectorXd z = orthogonalize(basis, n_basis, xc.col(col));
    const double zn = z.squaredNorm();
    double rss = rss_prev;
    if (zn > kCollinearRel * xc.col(col).squaredNorm()) {
      const Eigen::VectorXd q = z / std::sqrt(zn);
      const double gain = q.dot(residual);
      residual -= gain * q;
      basis.col(n_basis++) = q;
      rss = std::max(rss_prev - gain * gain, 0.0);
    }
    double p;
    if (rss <= 0.0) {
      p = rss_prev > 0.0 ? 0.0 : 1.0;
    } else {
      const int df = n - j - 1;
      const double f = (rss_prev - rss) / (rss / df);
      p = f_upper_tail(std::max(f, 0.0), df);
    }
    seq.p_values.push_back(std::clamp(p, 0.0, 1.0));
    rss_prev = rss;
  }
  return seq;
}

}  // namespace fvrlab
