#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "fvrlab/estimator.hpp"
#include "fvrlab/population_model.hpp"
#include "fvrlab/rng.hpp"
#include "fvrlab/selection.hpp"

namespace fvrlab {

// Block-diagonal equicorrelated design with at most one signal variable per
// block (the first variable of each of the first n_signal blocks).
struct BlockDesign {
  int n = 0;
  int n_blocks = 0;
  int block_size = 0;
  int n_signal = 0;
  double rho = 0.0;
  double sigma_eps = 0.0;
  double signal_coef = 1.0;

  int p() const { return n_blocks * block_size; }
  void validate() const;  // InvalidDesignError
};

PopulationModel generate_block_design(const BlockDesign& design);

// Rows of x are i.i.d. N(0, sigma) through the symmetric square root of
// sigma; y = intercept + x'beta + N(0, sigma_eps^2).
Dataset sample_dataset(const PopulationModel& model, int n, SplitMix64& rng);

// Mean, Monte Carlo standard error, and contributing-rep count of one curve
// point.
struct CurveStat {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double se = std::numeric_limits<double>::quiet_NaN();
  int count = 0;
};

// True FDR/FVR curves for forward stepwise at sample size n.
struct RateCurves {
  std::vector<CurveStat> fdr;
  std::vector<CurveStat> fvr;
  int k_max = 0;
  int reps = 0;
  std::uint64_t master_seed = 0;
};

// Rep i samples a dataset from stream master_seed ^ i, runs forward stepwise,
// and evaluates the full-model FDP and projected FVP of each k-prefix against
// the population model.  threads <= 0 uses all cores; results are identical
// for any thread count.
RateCurves true_rate_curves(const PopulationModel& model, int n, int k_max, int reps,
                            std::uint64_t master_seed, int threads = 0);

// Full experiment: true FDR/FVR at the full sample size, true FVR for
// stepwise on a fresh random half per rep, and the split-averaged estimate.
struct MonteCarloResult {
  int k_max = 0;
  int reps = 0;
  std::uint64_t master_seed = 0;
  EstimatorConfig estimator;
  std::optional<BlockDesign> design;  // echo when built from a block design

  std::vector<CurveStat> true_fdr;
  std::vector<CurveStat> true_fvr_full;
  std::vector<CurveStat> true_fvr_half;
  std::vector<CurveStat> fvr_est;          // unclipped
  std::vector<double> fvr_est_clipped;     // fvr_est.mean clamped to [0, 1]
};

MonteCarloResult run_experiment(const PopulationModel& model, int n,
                                const EstimatorConfig& estimator_cfg, int k_max, int reps,
                                std::uint64_t master_seed, int threads = 0);

MonteCarloResult run_experiment(const BlockDesign& design, const EstimatorConfig& estimator_cfg,
                                int k_max, int reps, std::uint64_t master_seed, int threads = 0);

}  // namespace fvrlab
