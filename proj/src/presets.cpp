#include "fvrlab/presets.hpp"

namespace fvrlab {

namespace {

Preset make(std::string name, std::string description, int n, int n_blocks, int block_size,
            int n_signal, double sigma_eps, double rho, int k_max, bool truth_only) {
  Preset preset;
  preset.name = std::move(name);
  preset.description = std::move(description);
  preset.design = BlockDesign{n, n_blocks, block_size, n_signal, rho, sigma_eps, 1.0};
  preset.estimator = EstimatorConfig{0.5, 50, 0.5, 0};
  preset.k_max = k_max;
  preset.reps = 100;
  preset.truth_only = truth_only;
  return preset;
}

}  // namespace

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets = {
      make("sec34", "truth curves: 20 blocks of 2, 10 signal, rho 0.95, sigma 0.8, n 50",
           50, 20, 2, 10, 0.8, 0.95, 12, true),
      make("fig7", "estimator vs truth: 20 blocks of 2, 6 signal, sigma 0.8", 100, 20, 2, 6, 0.8,
           0.95, 15, false),
      make("fig8", "misordering bias: 5 blocks of 3, 3 signal, sigma 0.5", 100, 5, 3, 3, 0.5,
           0.95, 14, false),
      make("fig9", "threshold-estimator bias: 20 blocks of 2, 10 signal, sigma 0.5", 100, 20, 2,
           10, 0.5, 0.95, 15, false),
      make("fig10", "high noise: 20 blocks of 2, 10 signal, sigma 2", 100, 20, 2, 10, 2.0, 0.95,
           15, false),
  };
  return presets;
}

const Preset* find_preset(const std::string& name) {
  for (const Preset& preset : all_presets()) {
    if (preset.name == name) return &preset;
  }
  return nullptr;
}

}  // namespace fvrlab
