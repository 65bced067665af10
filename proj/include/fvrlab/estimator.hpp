#pragma once

#include <cstdint>
#include <vector>

#include "fvrlab/rng.hpp"
#include "fvrlab/selection.hpp"

namespace fvrlab {

// Configuration of the split-based FVR estimator.
struct EstimatorConfig {
  double lambda = 0.5;          // p-value threshold in (0, 1)
  int n_splits = 50;            // splits averaged per estimate
  double split_fraction = 0.5;  // fraction of rows in the selection half
  std::uint64_t seed = 0;       // split i draws from stream seed + i

  void validate() const;  // std::invalid_argument on out-of-range fields
};

// Threshold (Storey-style) estimate of the null count among the first k
// p-values: #{p_j > lambda, j <= k} / (1 - lambda).
double threshold_estimate(const PValueSequence& pvals, int k, double lambda);

// One random split: stepwise selection on one half, incremental p-values on
// the other, threshold estimates divided by k.  The result may be shorter
// than k_max when stepwise terminates early.
std::vector<double> single_split_estimate(const Dataset& data, const EstimatorConfig& config,
                                          SplitMix64& split_rng, int k_max);

// Split-averaged FVR estimates per model size.  Estimates are reported
// unclipped; they may exceed 1 by construction of the threshold estimator.
struct FvrEstimateCurve {
  std::vector<double> estimate;              // [k-1]: mean over splits that reached k
  std::vector<int> splits_at_k;              // splits contributing at each k
  std::vector<std::vector<double>> per_split;  // [k-1]: per-split values, split order

  int k_max() const { return static_cast<int>(estimate.size()); }
};

FvrEstimateCurve fvr_estimate(const Dataset& data, const EstimatorConfig& config, int k_max,
                              int threads = 1);

// Bootstrap selection of lambda: minimizes the mean squared deviation of
// resampled threshold estimates from the smallest estimate over the grid;
// ties go to the smallest lambda.
double bootstrap_lambda(const PValueSequence& pvals, int k, const std::vector<double>& grid,
                        int n_boot, SplitMix64& rng);

}  // namespace fvrlab
