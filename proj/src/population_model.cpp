#include "fvrlab/population_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fvrlab/errors.hpp"
#include "fvrlab/linalg.hpp"

namespace fvrlab {

namespace {

// Lexicographic combinations: advances c (positions into [0, n)) to the next
// combination of the same size; returns false after the last one.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - (k - i)) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

std::vector<int> first_combination(int size) {
  std::vector<int> c(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

// Sparsest vector supported on a subset of `selected` solving the normal
// equations sigma_{A,S} x_S = rhs_A within tolerance.
Eigen::VectorXd sparsest_normal_solution(const PopulationModel& model,
                                         const std::vector<int>& selected,
                                         const Eigen::VectorXd& rhs, double tol) {
  const int m = static_cast<int>(selected.size());
  const Eigen::MatrixXd cols_all = submatrix(model.sigma, selected, selected);
  for (int size = 0; size <= m; ++size) {
    if (size == 0) {
      if (rhs.size() == 0 || rhs.cwiseAbs().maxCoeff() <= tol) {
        return Eigen::VectorXd::Zero(m);
      }
      continue;
    }
    std::vector<int> positions = first_combination(size);
    do {
      Eigen::MatrixXd lhs(m, size);
      for (int j = 0; j < size; ++j) {
        lhs.col(j) = cols_all.col(positions[static_cast<std::size_t>(j)]);
      }
      const Eigen::VectorXd solution = lhs.colPivHouseholderQr().solve(rhs);
      if ((lhs * solution - rhs).cwiseAbs().maxCoeff() <= tol) {
        Eigen::VectorXd full = Eigen::VectorXd::Zero(m);
        for (int j = 0; j < size; ++j) {
          full(positions[static_cast<std::size_t>(j)]) = solution(j);
        }
        return full;
      }
    } while (next_combination(positions, m));
  }
  throw DegenerateProjectionError(
      "projected_coefficients: no sparse solution satisfied the normal equations");
}

DependenceGraph graph_from_precision(const std::vector<int>& variables,
                                     const Eigen::MatrixXd& precision) {
  const int m = static_cast<int>(variables.size());
  const double tol = zero_threshold(precision);
  DependenceGraph graph;
  graph.variables = variables;
  for (int i = 0; i < m + 1; ++i) {
    for (int j = i + 1; j < m + 1; ++j) {
      if (std::abs(precision(i, j)) > tol) {
        const int a = i < m ? variables[static_cast<std::size_t>(i)] : DependenceGraph::kYNode;
        const int b = j < m ? variables[static_cast<std::size_t>(j)] : DependenceGraph::kYNode;
        graph.edges.emplace_back(a, b);
      }
    }
  }
  return graph;
}

}  // namespace

void PopulationModel::validate() const {
  if (sigma.rows() != sigma.cols()) {
    throw InvalidModelError("PopulationModel: sigma must be square, got " +
                            std::to_string(sigma.rows()) + "x" + std::to_string(sigma.cols()));
  }
  if (beta.size() != sigma.rows()) {
    throw InvalidModelError("PopulationModel: beta has length " + std::to_string(beta.size()) +
                            ", sigma is " + std::to_string(sigma.rows()) + "-dimensional");
  }
  if (!sigma.allFinite() || !beta.allFinite()) {
    throw InvalidModelError("PopulationModel: non-finite entries");
  }
  if (!is_symmetric(sigma)) {
    throw InvalidModelError("PopulationModel: sigma is not symmetric");
  }
  if (sigma.size() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
    const double lambda_max = eig.eigenvalues().maxCoeff();
    if (eig.eigenvalues().minCoeff() < -1e-10 * std::max(lambda_max, 0.0)) {
      throw InvalidModelError("PopulationModel: sigma is not positive semidefinite");
    }
  }
  if (!(sigma_eps >= 0.0) || !std::isfinite(sigma_eps)) {
    throw InvalidModelError("PopulationModel: sigma_eps must be a nonnegative real");
  }
}

bool DependenceGraph::has_edge(int a, int b) const {
  for (const auto& [u, v] : edges) {
    if ((u == a && v == b) || (u == b && v == a)) return true;
  }
  return false;
}

std::vector<int> DependenceGraph::y_neighbors() const {
  std::vector<int> out;
  for (const auto& [u, v] : edges) {
    if (u == kYNode) out.push_back(v);
    if (v == kYNode) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AugmentedCovariance build_augmented_covariance(const PopulationModel& model) {
  if (model.beta.size() != model.sigma.rows() || model.sigma.rows() != model.sigma.cols()) {
    throw InvalidModelError("build_augmented_covariance: sigma is " +
                            std::to_string(model.sigma.rows()) + "x" +
                            std::to_string(model.sigma.cols()) + " but beta has length " +
                            std::to_string(model.beta.size()));
  }
  const int p = model.dim();
  const Eigen::VectorXd cross = model.sigma * model.beta;
  AugmentedCovariance out;
  out.matrix.resize(p + 1, p + 1);
  out.matrix.topLeftCorner(p, p) = model.sigma;
  out.matrix.topRightCorner(p, 1) = cross;
  out.matrix.bottomLeftCorner(1, p) = cross.transpose();
  out.matrix(p, p) = model.beta.dot(cross) + model.sigma_eps * model.sigma_eps;
  return out;
}

Eigen::VectorXd projected_coefficients(const PopulationModel& model, const SelectedSet& selected) {
  if (selected.empty()) {
    throw std::invalid_argument("projected_coefficients: selected set is empty");
  }
  if (selected.indices().back() >= model.dim()) {
    throw std::invalid_argument("projected_coefficients: index out of range for model");
  }
  const std::vector<int>& idx = selected.indices();
  const Eigen::VectorXd cross_full = model.sigma * model.beta;
  const Eigen::VectorXd rhs = subvector(cross_full, idx);
  const Eigen::MatrixXd restricted = submatrix(model.sigma, idx, idx);

  if (const auto inv = sym_inverse(restricted)) {
    return *inv * rhs;
  }

  if (selected.size() > kEnumerationCap) {
    throw DegenerateProjectionError(
        "projected_coefficients: restricted covariance is singular and |selected| = " +
        std::to_string(selected.size()) + " exceeds the subset-enumeration cap (" +
        std::to_string(kEnumerationCap) + ")");
  }
  const double tol = kZeroTolScale * max_abs(cross_full);
  return sparsest_normal_solution(model, idx, rhs, tol);
}

DependenceGraph induced_graph(const PopulationModel& model, const SelectedSet& selected) {
  if (selected.empty()) {
    throw std::invalid_argument("induced_graph: selected set is empty");
  }
  const AugmentedCovariance aug = build_augmented_covariance(model);
  std::vector<int> nodes = selected.indices();
  nodes.push_back(model.dim());  // y
  const Eigen::MatrixXd restricted = submatrix(aug.matrix, nodes, nodes);
  const auto precision = sym_inverse(restricted);
  if (!precision) {
    throw DegenerateGraphError(
        "induced_graph: restricted augmented covariance is singular; "
        "use minimal_subset for degenerate selections");
  }
  return graph_from_precision(selected.indices(), *precision);
}

DependenceGraph induced_graph(const PopulationModel& model) {
  return induced_graph(model, SelectedSet::all(model.dim()));
}

}  // namespace fvrlab
