#pragma once

#include <string>
#include <vector>

#include "fvrlab/estimator.hpp"
#include "fvrlab/simulation.hpp"

namespace fvrlab {

// Named experiment configuration shipped with the CLI.
struct Preset {
  std::string name;
  std::string description;
  BlockDesign design;
  EstimatorConfig estimator;  // ignored when truth_only
  int k_max = 0;
  int reps = 100;
  bool truth_only = false;  // true rate curves only, no estimator
};

const std::vector<Preset>& all_presets();

// nullptr when the name is unknown.
const Preset* find_preset(const std::string& name);

}  // namespace fvrlab
