#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fvrlab {

// Sample realization of the linear model.
struct Dataset {
  Eigen::MatrixXd x;  // n x p
  Eigen::VectorXd y;  // n

  int n_rows() const { return static_cast<int>(x.rows()); }
  int n_cols() const { return static_cast<int>(x.cols()); }

  // n >= 2, p >= 1, matching lengths, finite entries.
  void validate() const;
};

// Variable ordering produced by forward selection, with the residual sum of
// squares after each step.
struct SelectionPath {
  std::vector<int> order;
  std::vector<double> rss;  // rss[j]: after fitting the first j+1 variables
  double total_ss = 0.0;    // step-0 RSS about the mean

  int length() const { return static_cast<int>(order.size()); }
};

struct PValueSequence {
  std::vector<double> p_values;

  int length() const { return static_cast<int>(p_values.size()); }
};

// Greedy forward selection with an unpenalized intercept.  Each step adds the
// variable with the largest RSS reduction of the least-squares fit; ties go
// to the smallest column index.  Stops early once no candidate reduces RSS by
// more than 1e-12 * TSS.
SelectionPath forward_stepwise(const Dataset& data, int max_steps);

// Nested-model F-test p-values for the first k steps of a path, evaluated on
// held-out data: F = (RSS_{j-1} - RSS_j) / (RSS_j / (n - j - 1)) against
// F(1, n - j - 1), upper tail.
PValueSequence incremental_pvalues(const SelectionPath& path, const Dataset& holdout, int k);

}  // namespace fvrlab
