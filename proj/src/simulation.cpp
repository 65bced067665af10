#include "fvrlab/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fvrlab/criteria.hpp"
#include "fvrlab/errors.hpp"
#include "fvrlab/linalg.hpp"
#include "fvrlab/parallel.hpp"

namespace fvrlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Fixed-order aggregation of per-rep values (NaN = rep did not reach this k),
// so results do not depend on the thread count.
CurveStat aggregate(const std::vector<double>& rep_values, int reps, int k, int k_max) {
  CurveStat stat;
  double sum = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double v = rep_values[static_cast<std::size_t>(r * k_max + k)];
    if (!std::isnan(v)) {
      sum += v;
      ++stat.count;
    }
  }
  if (stat.count == 0) return stat;
  stat.mean = sum / stat.count;
  if (stat.count >= 2) {
    double ss = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double v = rep_values[static_cast<std::size_t>(r * k_max + k)];
      if (!std::isnan(v)) {
        const double d = v - stat.mean;
        ss += d * d;
      }
    }
    stat.se = std::sqrt(ss / (stat.count - 1)) / std::sqrt(static_cast<double>(stat.count));
  }
  return stat;
}

std::vector<CurveStat> aggregate_all(const std::vector<double>& rep_values, int reps, int k_max) {
  std::vector<CurveStat> out(static_cast<std::size_t>(k_max));
  for (int k = 0; k < k_max; ++k) out[static_cast<std::size_t>(k)] = aggregate(rep_values, reps, k, k_max);
  return out;
}

// FDP/FVP of every prefix of a path, written into row r of the flat buffers.
void prefix_rates(const PopulationModel& model, const SelectionPath& path, int k_max, int rep,
                  std::vector<double>* fdp_out, std::vector<double>* fvp_out) {
  const int reached = std::min(path.length(), k_max);
  for (int k = 1; k <= reached; ++k) {
    std::vector<int> prefix(path.order.begin(), path.order.begin() + k);
    const SelectedSet selected(prefix, model.dim());
    const std::size_t slot = static_cast<std::size_t>(rep * k_max + (k - 1));
    if (fdp_out) (*fdp_out)[slot] = full_model_false_count(model, selected).proportion.value();
    if (fvp_out) (*fvp_out)[slot] = projected_false_count(model, selected).proportion.value();
  }
}

Dataset take_rows(const Dataset& data, const std::vector<int>& rows, int count) {
  Dataset out{Eigen::MatrixXd(count, data.n_cols()), Eigen::VectorXd(count)};
  for (int i = 0; i < count; ++i) {
    out.x.row(i) = data.x.row(rows[static_cast<std::size_t>(i)]);
    out.y[i] = data.y[rows[static_cast<std::size_t>(i)]];
  }
  return out;
}

}  // namespace

void BlockDesign::validate() const {
  if (n_blocks < 1 || block_size < 1) {
    throw InvalidDesignError("BlockDesign: need n_blocks >= 1 and block_size >= 1");
  }
  if (n_signal < 0 || n_signal > n_blocks) {
    throw InvalidDesignError("BlockDesign: n_signal = " + std::to_string(n_signal) +
                             " must lie in [0, n_blocks = " + std::to_string(n_blocks) + "]");
  }
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw InvalidDesignError("BlockDesign: rho = " + std::to_string(rho) +
                             " must lie in [0, 1)");
  }
  if (!(sigma_eps >= 0.0)) {
    throw InvalidDesignError("BlockDesign: sigma_eps must be nonnegative");
  }
  if (!std::isfinite(signal_coef)) {
    throw InvalidDesignError("BlockDesign: signal_coef must be finite");
  }
}

PopulationModel generate_block_design(const BlockDesign& design) {
  design.validate();
  const int p = design.p();
  PopulationModel model;
  model.sigma = Eigen::MatrixXd::Zero(p, p);
  model.beta = Eigen::VectorXd::Zero(p);
  model.sigma_eps = design.sigma_eps;
  for (int b = 0; b < design.n_blocks; ++b) {
    const int start = b * design.block_size;
    for (int i = 0; i < design.block_size; ++i) {
      for (int j = 0; j < design.block_size; ++j) {
        model.sigma(start + i, start + j) = (i == j) ? 1.0 : design.rho;
      }
    }
    if (b < design.n_signal) model.beta[start] = design.signal_coef;
  }
  return model;
}

Dataset sample_dataset(const PopulationModel& model, int n, SplitMix64& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample_dataset: n must be >= 1");
  }
  const int p = model.dim();
  const Eigen::MatrixXd factor = sym_sqrt(model.sigma);

  Dataset data{Eigen::MatrixXd(n, p), Eigen::VectorXd(n)};
  Eigen::VectorXd z(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z[j] = rng.next_normal();
    data.x.row(i) = (factor * z).transpose();
  }
  for (int i = 0; i < n; ++i) {
    data.y[i] = model.intercept + data.x.row(i).dot(model.beta) +
                model.sigma_eps * rng.next_normal();
  }
  return data;
}

RateCurves true_rate_curves(const PopulationModel& model, int n, int k_max, int reps,
                            std::uint64_t master_seed, int threads) {
  model.validate();
  if (k_max < 1 || k_max > model.dim()) {
    throw std::invalid_argument("true_rate_curves: k_max must lie in [1, p]");
  }
  if (reps < 1) {
    throw std::invalid_argument("true_rate_curves: reps must be >= 1");
  }
  if (n < 3) {
    throw std::invalid_argument("true_rate_curves: n must be >= 3");
  }
  const int steps = std::min(k_max, std::min(model.dim(), n - 2));

  std::vector<double> fdp(static_cast<std::size_t>(reps) * k_max, kNaN);
  std::vector<double> fvp(static_cast<std::size_t>(reps) * k_max, kNaN);
  parallel_for_index(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    SplitMix64 rng(master_seed ^ static_cast<std::uint64_t>(r));
    const Dataset data = sample_dataset(model, n, rng);
    const SelectionPath path = forward_stepwise(data, steps);
    prefix_rates(model, path, k_max, static_cast<int>(r), &fdp, &fvp);
  });

  RateCurves curves;
  curves.k_max = k_max;
  curves.reps = reps;
  curves.master_seed = master_seed;
  curves.fdr = aggregate_all(fdp, reps, k_max);
  curves.fvr = aggregate_all(fvp, reps, k_max);
  return curves;
}

MonteCarloResult run_experiment(const PopulationModel& model, int n,
                                const EstimatorConfig& estimator_cfg, int k_max, int reps,
                                std::uint64_t master_seed, int threads) {
  model.validate();
  estimator_cfg.validate();
  if (k_max < 1 || k_max > model.dim()) {
    throw std::invalid_argument("run_experiment: k_max must lie in [1, p]");
  }
  if (reps < 1) {
    throw std::invalid_argument("run_experiment: reps must be >= 1");
  }
  if (n < 4) {
    throw std::invalid_argument("run_experiment: n must be >= 4");
  }
  const int p = model.dim();
  const int steps_full = std::min(k_max, std::min(p, n - 2));
  const int n_half = (n + 1) / 2;
  const int steps_half = std::min(k_max, std::min(p, n_half - 2));

  std::vector<double> fdp(static_cast<std::size_t>(reps) * k_max, kNaN);
  std::vector<double> fvp_full(static_cast<std::size_t>(reps) * k_max, kNaN);
  std::vector<double> fvp_half(static_cast<std::size_t>(reps) * k_max, kNaN);
  std::vector<double> est(static_cast<std::size_t>(reps) * k_max, kNaN);

  parallel_for_index(static_cast<std::size_t>(reps), threads, [&](std::size_t r) {
    // Stream layout per rep: dataset draws, then the estimator sub-seed,
    // then the half-sample shuffle.
    SplitMix64 rng(master_seed ^ static_cast<std::uint64_t>(r));
    const Dataset data = sample_dataset(model, n, rng);
    const std::uint64_t estimator_seed = rng.next();

    std::vector<int> rows(static_cast<std::size_t>(n));
    std::iota(rows.begin(), rows.end(), 0);
    rng.shuffle(rows);
    const Dataset half = take_rows(data, rows, n_half);

    const SelectionPath path_full = forward_stepwise(data, steps_full);
    prefix_rates(model, path_full, k_max, static_cast<int>(r), &fdp, &fvp_full);

    if (steps_half >= 1) {
      const SelectionPath path_half = forward_stepwise(half, steps_half);
      prefix_rates(model, path_half, k_max, static_cast<int>(r), nullptr, &fvp_half);
    }

    EstimatorConfig cfg = estimator_cfg;
    cfg.seed = estimator_seed;
    const FvrEstimateCurve curve = fvr_estimate(data, cfg, k_max, /*threads=*/1);
    for (int k = 0; k < k_max; ++k) {
      if (curve.splits_at_k[static_cast<std::size_t>(k)] > 0) {
        est[static_cast<std::size_t>(static_cast<int>(r) * k_max + k)] =
            curve.estimate[static_cast<std::size_t>(k)];
      }
    }
  });

  MonteCarloResult result;
  result.k_max = k_max;
  result.reps = reps;
  result.master_seed = master_seed;
  result.estimator = estimator_cfg;
  result.true_fdr = aggregate_all(fdp, reps, k_max);
  result.true_fvr_full = aggregate_all(fvp_full, reps, k_max);
  result.true_fvr_half = aggregate_all(fvp_half, reps, k_max);
  result.fvr_est = aggregate_all(est, reps, k_max);
  result.fvr_est_clipped.resize(static_cast<std::size_t>(k_max), kNaN);
  for (int k = 0; k < k_max; ++k) {
    const double m = result.fvr_est[static_cast<std::size_t>(k)].mean;
    if (!std::isnan(m)) {
      result.fvr_est_clipped[static_cast<std::size_t>(k)] = std::clamp(m, 0.0, 1.0);
    }
  }
  return result;
}

MonteCarloResult run_experiment(const BlockDesign& design, const EstimatorConfig& estimator_cfg,
                                int k_max, int reps, std::uint64_t master_seed, int threads) {
  design.validate();
  if (design.n < 4) {
    throw InvalidDesignError("run_experiment: design.n must be >= 4");
  }
  MonteCarloResult result = run_experiment(generate_block_design(design), design.n, estimator_cfg,
                                           k_max, reps, master_seed, threads);
  result.design = design;
  return result;
}

}  // namespace fvrlab
