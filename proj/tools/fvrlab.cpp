// Command-line front end: evaluates the three false-selection criteria for a
// model file, runs truth-only Monte Carlo curves, runs full estimator
// experiments, and ships the simulation presets.  Curve modes write one CSV
// row per model size.

#include <CLI11.hpp>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fvrlab/config.hpp"
#include "fvrlab/criteria.hpp"
#include "fvrlab/csv.hpp"
#include "fvrlab/errors.hpp"
#include "fvrlab/presets.hpp"
#include "fvrlab/simulation.hpp"

namespace {

using namespace fvrlab;

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<int> k_max;
  std::optional<double> lambda;
  std::optional<int> splits;
  std::optional<int> threads;
};

void add_run_flags(CLI::App* cmd, CommonOptions* opts) {
  cmd->add_option("--out", opts->out_path, "Output CSV path");
  cmd->add_option("--seed", opts->seed, "Master seed (unsigned 64-bit)");
  cmd->add_option("--reps", opts->reps, "Monte Carlo repetitions");
  cmd->add_option("--kmax", opts->k_max, "Largest model size to track");
  cmd->add_option("--lambda", opts->lambda, "Threshold lambda in (0,1)");
  cmd->add_option("--splits", opts->splits, "Splits averaged per estimate");
  cmd->add_option("--threads", opts->threads,
                  "Worker threads (0 = all cores; env FVRLAB_THREADS is the fallback)");
}

int resolve_thread_request(const CommonOptions& opts) {
  if (opts.threads) {
    if (*opts.threads < 0) throw ConfigError("--threads: must be >= 0");
    return *opts.threads;
  }
  if (const char* env = std::getenv("FVRLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*env == '\0' || *end != '\0' || v < 0) {
      throw ConfigError("FVRLAB_THREADS: expected a nonnegative integer, got '" +
                        std::string(env) + "'");
    }
    return static_cast<int>(v);
  }
  return 0;  // auto
}

std::vector<int> parse_selection_list(const std::string& raw) {
  std::vector<int> out;
  std::string token;
  for (char c : raw + ",") {
    if (c == ',') {
      if (!token.empty()) {
        try {
          out.push_back(std::stoi(token));
        } catch (const std::exception&) {
          throw ConfigError("--select: expected an integer, got '" + token + "'");
        }
        token.clear();
      }
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      token.push_back(c);
    }
  }
  if (out.empty()) throw ConfigError("--select: empty selection");
  return out;
}

int run_criteria(const std::string& model_path, const std::string& select_raw) {
  const PopulationModel model = load_model_file(model_path);
  const SelectedSet selected =
      SelectedSet::from_one_based(parse_selection_list(select_raw), model.dim());
  const FalseSelectionReport marginal = marginal_false_count(model, selected);
  const FalseSelectionReport full = full_model_false_count(model, selected);
  const FalseSelectionReport projected = projected_false_count(model, selected);
  std::cout << "marginal=" << marginal.proportion.str() << " full=" << full.proportion.str()
            << " projected=" << projected.proportion.str() << "\n";
  return 0;
}

void print_summary(const std::string& what, const std::string& out_path, int rows, int reps,
                   std::uint64_t seed) {
  std::cout << what << ": wrote " << out_path << " (" << rows << " rows, reps=" << reps
            << ", seed=" << seed << ")\n";
}

int run_truth(const CommonOptions& opts, const std::string& model_path, std::optional<int> n_flag) {
  PopulationModel model;
  int n = 0;
  if (!opts.config_path.empty()) {
    const ConfigFile file = ConfigFile::load(opts.config_path);
    const BlockDesign design = design_from_config(file);
    model = generate_block_design(design);
    n = design.n;
  } else if (!model_path.empty()) {
    model = load_model_file(model_path);
    if (!n_flag) throw ConfigError("truth: --n is required with --model");
    n = *n_flag;
  } else {
    throw ConfigError("truth: need --config or --model");
  }
  if (opts.out_path.empty()) throw ConfigError("truth: --out is required");

  const int k_max = opts.k_max.value_or(std::min(model.dim(), 15));
  const int reps = opts.reps.value_or(100);
  const std::uint64_t seed = opts.seed.value_or(0);
  const RateCurves curves =
      true_rate_curves(model, n, k_max, reps, seed, resolve_thread_request(opts));
  write_file(opts.out_path, result_to_csv(curves));
  print_summary("truth", opts.out_path, curves.k_max, reps, seed);
  return 0;
}

int run_full_experiment(const CommonOptions& opts) {
  if (opts.config_path.empty()) throw ConfigError("experiment: --config is required");
  if (opts.out_path.empty()) throw ConfigError("experiment: --out is required");
  const ConfigFile file = ConfigFile::load(opts.config_path);
  const BlockDesign design = design_from_config(file);
  EstimatorConfig estimator = estimator_from_config(file);
  if (opts.lambda) estimator.lambda = *opts.lambda;
  if (opts.splits) estimator.n_splits = *opts.splits;
  estimator.validate();

  const int k_max = opts.k_max.value_or(
      static_cast<int>(file.get_int_or("run", "k_max", std::min(design.p(), 15))));
  const int reps = opts.reps.value_or(static_cast<int>(file.get_int_or("run", "reps", 100)));
  const std::uint64_t seed = opts.seed.value_or(file.get_u64_or("run", "seed", 0));

  const MonteCarloResult result =
      run_experiment(design, estimator, k_max, reps, seed, resolve_thread_request(opts));
  write_file(opts.out_path, result_to_csv(result));
  print_summary("experiment", opts.out_path, result.k_max, reps, seed);
  return 0;
}

int run_preset(const CommonOptions& opts, const std::string& name) {
  const Preset* preset = find_preset(name);
  if (!preset) {
    std::string known;
    for (const Preset& p : all_presets()) known += (known.empty() ? "" : ", ") + p.name;
    throw ConfigError("preset: unknown name '" + name + "' (known: " + known + ")");
  }
  const int k_max = opts.k_max.value_or(preset->k_max);
  const int reps = opts.reps.value_or(preset->reps);
  const std::uint64_t seed = opts.seed.value_or(0);
  const std::string out_path = opts.out_path.empty() ? name + ".csv" : opts.out_path;
  const int threads = resolve_thread_request(opts);

  if (preset->truth_only) {
    const RateCurves curves = true_rate_curves(generate_block_design(preset->design),
                                               preset->design.n, k_max, reps, seed, threads);
    write_file(out_path, result_to_csv(curves));
    print_summary("preset " + name, out_path, curves.k_max, reps, seed);
    return 0;
  }

  EstimatorConfig estimator = preset->estimator;
  if (opts.lambda) estimator.lambda = *opts.lambda;
  if (opts.splits) estimator.n_splits = *opts.splits;
  estimator.validate();
  const MonteCarloResult result =
      run_experiment(preset->design, estimator, k_max, reps, seed, threads);
  write_file(out_path, result_to_csv(result));
  print_summary("preset " + name, out_path, result.k_max, reps, seed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"False variable selection rates: population criteria, stepwise selection, and "
               "the split-based FVR estimator"};
  app.require_subcommand(1);

  auto* criteria_cmd =
      app.add_subcommand("criteria", "Evaluate the three criteria for a model file");
  std::string criteria_model;
  std::string criteria_select;
  criteria_cmd->add_option("--model", criteria_model, "Model file")->required();
  criteria_cmd
      ->add_option("--select", criteria_select, "Selected variables, 1-based (e.g. 2,3,5,7)")
      ->required();

  auto* truth_cmd = app.add_subcommand("truth", "True FDR/FVR curves for forward stepwise");
  CommonOptions truth_opts;
  std::string truth_model;
  std::optional<int> truth_n;
  truth_cmd->add_option("--config", truth_opts.config_path, "Config file with a [design] section");
  truth_cmd->add_option("--model", truth_model, "Explicit population model file");
  truth_cmd->add_option("--n", truth_n, "Sample size (required with --model)");
  add_run_flags(truth_cmd, &truth_opts);

  auto* exp_cmd = app.add_subcommand("experiment", "Truth curves plus the FVR estimate");
  CommonOptions exp_opts;
  exp_cmd->add_option("--config", exp_opts.config_path,
                      "Config file with [design] and optional [estimator]/[run]");
  add_run_flags(exp_cmd, &exp_opts);

  auto* preset_cmd = app.add_subcommand("preset", "Run a named simulation configuration");
  CommonOptions preset_opts;
  std::string preset_name;
  preset_cmd->add_option("name", preset_name, "One of: sec34, fig7, fig8, fig9, fig10")
      ->required();
  add_run_flags(preset_cmd, &preset_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (criteria_cmd->parsed()) return run_criteria(criteria_model, criteria_select);
    if (truth_cmd->parsed()) return run_truth(truth_opts, truth_model, truth_n);
    if (exp_cmd->parsed()) return run_full_experiment(exp_opts);
    if (preset_cmd->parsed()) return run_preset(preset_opts, preset_name);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidModelError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDesignError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
