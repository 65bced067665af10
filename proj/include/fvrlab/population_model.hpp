#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "fvrlab/selected_set.hpp"

namespace fvrlab {

// Ground-truth Gaussian linear model: x ~ N(0, sigma) and
// y = intercept + x'beta + N(0, sigma_eps^2).  The intercept is carried but
// plays no role in the false-selection criteria, which depend only on
// covariances.
struct PopulationModel {
  Eigen::MatrixXd sigma;
  Eigen::VectorXd beta;
  double sigma_eps = 0.0;
  double intercept = 0.0;

  int dim() const { return static_cast<int>(sigma.rows()); }

  // Throws InvalidModelError when sigma is non-square, asymmetric, not PSD,
  // beta has the wrong length, or sigma_eps < 0.
  void validate() const;
};

// Joint covariance of (x, y); the last row/column indexes y.
struct AugmentedCovariance {
  Eigen::MatrixXd matrix;
  int n_vars() const { return static_cast<int>(matrix.rows()) - 1; }
};

// Partial-correlation graph over a set of variables plus the response node.
struct DependenceGraph {
  static constexpr int kYNode = -1;

  std::vector<int> variables;              // 0-based indices of the included variables
  std::vector<std::pair<int, int>> edges;  // endpoints by original index; kYNode marks y

  bool has_edge(int a, int b) const;
  std::vector<int> y_neighbors() const;  // sorted variable indices adjacent to y
};

// Sigma~ = [[Sigma, Sigma b], [b' Sigma, b' Sigma b + sigma_eps^2]].
AugmentedCovariance build_augmented_covariance(const PopulationModel& model);

// Coefficients of the population regression of x'beta onto the selected
// columns.  With a nonsingular restricted covariance this is the unique
// solution of the normal equations; a singular restriction falls back to a
// sparsest solution found by subset enumeration (supports of increasing
// size, capped at |selected| <= 20).
Eigen::VectorXd projected_coefficients(const PopulationModel& model, const SelectedSet& selected);

// Dependence graph of the marginal distribution of (x_selected, y): inverts
// the restricted augmented covariance and links pairs with nonzero precision
// entries.  Throws DegenerateGraphError when the restriction is singular.
DependenceGraph induced_graph(const PopulationModel& model, const SelectedSet& selected);
DependenceGraph induced_graph(const PopulationModel& model);  // all variables

// Subset-enumeration cap shared by the sparsest-projection search and
// minimal_subset.
inline constexpr int kEnumerationCap = 20;

}  // namespace fvrlab
