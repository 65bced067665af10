#include "fvrlab/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fvrlab/errors.hpp"
#include "fvrlab/parallel.hpp"

namespace fvrlab {

void EstimatorConfig::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("EstimatorConfig: lambda must lie in (0, 1), got " +
                                std::to_string(lambda));
  }
  if (n_splits < 1) {
    throw std::invalid_argument("EstimatorConfig: n_splits must be >= 1");
  }
  if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
    throw std::invalid_argument("EstimatorConfig: split_fraction must lie in (0, 1)");
  }
}

double threshold_estimate(const PValueSequence& pvals, int k, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("threshold_estimate: lambda must lie in (0, 1), got " +
                                std::to_string(lambda));
  }
  if (k < 0 || k > pvals.length()) {
    throw std::invalid_argument("threshold_estimate: k = " + std::to_string(k) +
                                " exceeds sequence length " + std::to_string(pvals.length()));
  }
  int count = 0;
  for (int j = 0; j < k; ++j) {
    if (pvals.p_values[static_cast<std::size_t>(j)] > lambda) ++count;
  }
  return count / (1.0 - lambda);
}

std::vector<double> single_split_estimate(const Dataset& data, const EstimatorConfig& config,
                                          SplitMix64& split_rng, int k_max) {
  config.validate();
  data.validate();
  const int n = data.n_rows();
  const int p = data.n_cols();
  if (n < 4) {
    throw std::invalid_argument("single_split_estimate: need n >= 4 rows, got " +
                                std::to_string(n));
  }
  if (k_max < 1) {
    throw std::invalid_argument("single_split_estimate: k_max must be >= 1");
  }

  // Odd counts put the extra row in the selection half.
  const int n_select = std::min<int>(
      n - 1, std::max<int>(1, static_cast<int>(std::ceil(config.split_fraction * n))));
  const int n_infer = n - n_select;
  if (n_select < 2 || n_infer < 2) {
    throw InsufficientHoldoutError("single_split_estimate: split " + std::to_string(n_select) +
                                   "/" + std::to_string(n_infer) + " leaves a half too small");
  }
  if (n_infer <= k_max + 1) {
    throw InsufficientHoldoutError(
        "single_split_estimate: inference half has " + std::to_string(n_infer) +
        " rows, cannot F-test k_max = " + std::to_string(k_max) + " steps");
  }
  const int steps = std::min(k_max, std::min(p, n_select - 2));
  if (steps < 1) {
    throw InsufficientHoldoutError("single_split_estimate: selection half has " +
                                   std::to_string(n_select) + " rows, too few for one step");
  }

  std::vector<int> rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  split_rng.shuffle(rows);

  Dataset select{Eigen::MatrixXd(n_select, p), Eigen::VectorXd(n_select)};
  Dataset infer{Eigen::MatrixXd(n_infer, p), Eigen::VectorXd(n_infer)};
  for (int i = 0; i < n_select; ++i) {
    select.x.row(i) = data.x.row(rows[static_cast<std::size_t>(i)]);
    select.y[i] = data.y[rows[static_cast<std::size_t>(i)]];
  }
  for (int i = 0; i < n_infer; ++i) {
    infer.x.row(i) = data.x.row(rows[static_cast<std::size_t>(n_select + i)]);
    infer.y[i] = data.y[rows[static_cast<std::size_t>(n_select + i)]];
  }

  const SelectionPath path = forward_stepwise(select, steps);
  const int reached = path.length();
  if (reached == 0) return {};

  const PValueSequence pvals = incremental_pvalues(path, infer, reached);
  std::vector<double> out(static_cast<std::size_t>(reached));
  for (int k = 1; k <= reached; ++k) {
    out[static_cast<std::size_t>(k - 1)] = threshold_estimate(pvals, k, config.lambda) / k;
  }
  return out;
}

FvrEstimateCurve fvr_estimate(const Dataset& data, const EstimatorConfig& config, int k_max,
                              int threads) {
  config.validate();
  if (k_max < 1) {
    throw std::invalid_argument("fvr_estimate: k_max must be >= 1");
  }

  std::vector<std::vector<double>> split_values(static_cast<std::size_t>(config.n_splits));
  parallel_for_index(static_cast<std::size_t>(config.n_splits), threads, [&](std::size_t i) {
    SplitMix64 rng(config.seed + static_cast<std::uint64_t>(i));
    split_values[i] = single_split_estimate(data, config, rng, k_max);
  });

  FvrEstimateCurve curve;
  curve.estimate.assign(static_cast<std::size_t>(k_max),
                        std::numeric_limits<double>::quiet_NaN());
  curve.splits_at_k.assign(static_cast<std::size_t>(k_max), 0);
  curve.per_split.resize(static_cast<std::size_t>(k_max));
  for (int k = 0; k < k_max; ++k) {
    auto& values = curve.per_split[static_cast<std::size_t>(k)];
    for (const auto& split : split_values) {
      if (static_cast<int>(split.size()) > k) values.push_back(split[static_cast<std::size_t>(k)]);
    }
    curve.splits_at_k[static_cast<std::size_t>(k)] = static_cast<int>(values.size());
    if (!values.empty()) {
      curve.estimate[static_cast<std::size_t>(k)] =
          std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    }
  }
  return curve;
}

double bootstrap_lambda(const PValueSequence& pvals, int k, const std::vector<double>& grid,
                        int n_boot, SplitMix64& rng) {
  if (grid.empty()) {
    throw std::invalid_argument("bootstrap_lambda: grid is empty");
  }
  for (double lambda : grid) {
    if (!(lambda > 0.0 && lambda < 1.0)) {
      throw std::invalid_argument("bootstrap_lambda: grid value " + std::to_string(lambda) +
                                  " outside (0, 1)");
    }
  }
  if (n_boot < 1) {
    throw std::invalid_argument("bootstrap_lambda: n_boot must be >= 1");
  }
  if (k < 1 || k > pvals.length()) {
    throw std::invalid_argument("bootstrap_lambda: k = " + std::to_string(k) +
                                " exceeds sequence length " + std::to_string(pvals.length()));
  }

  // Reference: the smallest estimate over the grid on the original p-values.
  double reference = std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    reference = std::min(reference, threshold_estimate(pvals, k, lambda));
  }

  std::vector<double> mse(grid.size(), 0.0);
  PValueSequence resampled;
  resampled.p_values.resize(static_cast<std::size_t>(k));
  for (int b = 0; b < n_boot; ++b) {
    for (int j = 0; j < k; ++j) {
      const std::size_t pick = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(k)));
      resampled.p_values[static_cast<std::size_t>(j)] = pvals.p_values[pick];
    }
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double diff = threshold_estimate(resampled, k, grid[g]) - reference;
      mse[g] += diff * diff;
    }
  }

  std::size_t best = 0;
  for (std::size_t g = 1; g < grid.size(); ++g) {
    if (mse[g] < mse[best] || (mse[g] == mse[best] && grid[g] < grid[best])) best = g;
  }
  return grid[best];
}

}  // namespace fvrlab
