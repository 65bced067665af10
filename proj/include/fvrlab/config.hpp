#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fvrlab/estimator.hpp"
#include "fvrlab/population_model.hpp"
#include "fvrlab/simulation.hpp"

namespace fvrlab {

// Minimal INI-style document: [section] headers, key = value lines, '#' or
// ';' comments.  Keys before any header land in the "" section.
class ConfigFile {
 public:
  static ConfigFile load(const std::string& path);          // ConfigError on I/O or syntax
  static ConfigFile parse(const std::string& text, std::string origin = "<string>");

  bool has(const std::string& section, const std::string& key) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string require(const std::string& section, const std::string& key) const;

  // Typed accessors; errors name "section.key".
  double get_double(const std::string& section, const std::string& key) const;
  double get_double_or(const std::string& section, const std::string& key, double fallback) const;
  long long get_int(const std::string& section, const std::string& key) const;
  long long get_int_or(const std::string& section, const std::string& key, long long fallback) const;
  std::uint64_t get_u64_or(const std::string& section, const std::string& key,
                           std::uint64_t fallback) const;
  std::vector<double> get_number_list(const std::string& section, const std::string& key) const;

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Model file: [model] (or sectionless) with keys p, sigma (row-major list)
// or blocks = [{size = ..., rho = ...}, ...], beta, sigma_eps, intercept.
PopulationModel load_model_file(const std::string& path);
PopulationModel model_from_config(const ConfigFile& file);

// [design] section: n, n_blocks, block_size, n_signal, rho, sigma_eps,
// signal_coef (optional, default 1).
BlockDesign design_from_config(const ConfigFile& file);

// [estimator] section, all optional: lambda (0.5), n_splits (50),
// split_fraction (0.5).
EstimatorConfig estimator_from_config(const ConfigFile& file);

}  // namespace fvrlab
