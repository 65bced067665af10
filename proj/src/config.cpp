#include "fvrlab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fvrlab/errors.hpp"

namespace fvrlab {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

std::string strip_comment(const std::string& line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '#' || line[i] == ';') return line.substr(0, i);
  }
  return line;
}

double parse_number(const std::string& raw, const std::string& where) {
  const std::string s = trim(raw);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw ConfigError(where + ": expected a number, got '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_top_level(const std::string& raw, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string current;
  for (char c : raw) {
    if (c == '{' || c == '[') ++depth;
    if (c == '}' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

struct BlockSpec {
  int size = 0;
  double rho = 0.0;
};

// Parses `[{size = 2, rho = 0.95}, {size = 3, rho = 0.5}]`.
std::vector<BlockSpec> parse_block_list(const std::string& raw, const std::string& where) {
  std::string s = trim(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError(where + ": expected a bracketed list of {size, rho} entries");
  }
  s = trim(s.substr(1, s.size() - 2));
  std::vector<BlockSpec> blocks;
  if (s.empty()) return blocks;
  for (const std::string& part : split_top_level(s, ',')) {
    std::string entry = trim(part);
    if (entry.size() < 2 || entry.front() != '{' || entry.back() != '}') {
      throw ConfigError(where + ": expected '{size = ..., rho = ...}', got '" + entry + "'");
    }
    entry = entry.substr(1, entry.size() - 2);
    BlockSpec block;
    bool have_size = false;
    bool have_rho = false;
    for (const std::string& field : split_top_level(entry, ',')) {
      const std::size_t eq = field.find('=');
      if (eq == std::string::npos) {
        throw ConfigError(where + ": expected 'key = value' inside block entry");
      }
      const std::string key = trim(field.substr(0, eq));
      const std::string value = field.substr(eq + 1);
      if (key == "size") {
        block.size = static_cast<int>(parse_number(value, where + ".size"));
        have_size = true;
      } else if (key == "rho") {
        block.rho = parse_number(value, where + ".rho");
        have_rho = true;
      } else {
        throw ConfigError(where + ": unknown block field '" + key + "'");
      }
    }
    if (!have_size || !have_rho) {
      throw ConfigError(where + ": each block needs both size and rho");
    }
    blocks.push_back(block);
  }
  return blocks;
}

}  // namespace

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

ConfigFile ConfigFile::parse(const std::string& text, std::string origin) {
  ConfigFile file;
  file.origin_ = std::move(origin);
  std::istringstream in(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string content = trim(strip_comment(line));
    if (content.empty()) continue;
    if (content.front() == '[' && content.back() == ']') {
      section = trim(content.substr(1, content.size() - 2));
      continue;
    }
    const std::size_t eq = content.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.origin_ + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + content + "'");
    }
    const std::string key = trim(content.substr(0, eq));
    if (key.empty()) {
      throw ConfigError(file.origin_ + ":" + std::to_string(line_no) + ": empty key");
    }
    if (file.sections_[section].count(key)) {
      throw ConfigError(file.origin_ + ":" + std::to_string(line_no) + ": duplicate key '" +
                        (section.empty() ? key : section + "." + key) + "'");
    }
    file.sections_[section][key] = trim(content.substr(eq + 1));
  }
  return file;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  const auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::optional<std::string> ConfigFile::get(const std::string& section,
                                           const std::string& key) const {
  const auto it = sections_.find(section);
  if (it == sections_.end()) return std::nullopt;
  const auto kt = it->second.find(key);
  if (kt == it->second.end()) return std::nullopt;
  return kt->second;
}

std::string ConfigFile::require(const std::string& section, const std::string& key) const {
  if (const auto v = get(section, key)) return *v;
  throw ConfigError(origin_ + ": missing required key '" +
                    (section.empty() ? key : section + "." + key) + "'");
}

double ConfigFile::get_double(const std::string& section, const std::string& key) const {
  return parse_number(require(section, key), section + "." + key);
}

double ConfigFile::get_double_or(const std::string& section, const std::string& key,
                                 double fallback) const {
  if (!has(section, key)) return fallback;
  return get_double(section, key);
}

long long ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const double v = get_double(section, key);
  const long long i = static_cast<long long>(v);
  if (static_cast<double>(i) != v) {
    throw ConfigError(section + "." + key + ": expected an integer, got '" +
                      require(section, key) + "'");
  }
  return i;
}

long long ConfigFile::get_int_or(const std::string& section, const std::string& key,
                                 long long fallback) const {
  if (!has(section, key)) return fallback;
  return get_int(section, key);
}

std::uint64_t ConfigFile::get_u64_or(const std::string& section, const std::string& key,
                                     std::uint64_t fallback) const {
  if (!has(section, key)) return fallback;
  const std::string raw = require(section, key);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(trim(raw).c_str(), &end, 10);
  if (trim(raw).empty() || *end != '\0') {
    throw ConfigError(section + "." + key + ": expected an unsigned integer, got '" + raw + "'");
  }
  return v;
}

std::vector<double> ConfigFile::get_number_list(const std::string& section,
                                                const std::string& key) const {
  const std::string raw = require(section, key);
  std::vector<double> out;
  for (const std::string& part : split_top_level(raw, ',')) {
    out.push_back(parse_number(part, section + "." + key));
  }
  return out;
}

PopulationModel load_model_file(const std::string& path) {
  return model_from_config(ConfigFile::load(path));
}

PopulationModel model_from_config(const ConfigFile& file) {
  // Allow the keys either in a [model] section or at the top level.
  const std::string section = file.has("model", "beta") || file.has("model", "sigma") ||
                                      file.has("model", "blocks")
                                  ? "model"
                                  : "";
  PopulationModel model;

  const bool has_sigma = file.has(section, "sigma");
  const bool has_blocks = file.has(section, "blocks");
  if (has_sigma == has_blocks) {
    throw ConfigError(file.origin() + ": model needs exactly one of '" +
                      (section.empty() ? "" : section + ".") + "sigma' or 'blocks'");
  }

  int p = 0;
  if (has_blocks) {
    const auto blocks =
        parse_block_list(file.require(section, "blocks"), section + ".blocks");
    if (blocks.empty()) {
      throw ConfigError(section + ".blocks: need at least one block");
    }
    for (const auto& b : blocks) {
      if (b.size < 1) throw ConfigError(section + ".blocks: block size must be >= 1");
      p += b.size;
    }
    model.sigma = Eigen::MatrixXd::Zero(p, p);
    int start = 0;
    for (const auto& b : blocks) {
      for (int i = 0; i < b.size; ++i) {
        for (int j = 0; j < b.size; ++j) {
          model.sigma(start + i, start + j) = (i == j) ? 1.0 : b.rho;
        }
      }
      start += b.size;
    }
  } else {
    const std::vector<double> entries = file.get_number_list(section, "sigma");
    const long long declared = file.get_int_or(section, "p", -1);
    p = declared >= 0 ? static_cast<int>(declared)
                      : static_cast<int>(std::llround(std::sqrt(static_cast<double>(entries.size()))));
    if (static_cast<std::size_t>(p) * static_cast<std::size_t>(p) != entries.size()) {
      throw ConfigError(section + ".sigma: expected p*p = " + std::to_string(p * p) +
                        " entries, got " + std::to_string(entries.size()));
    }
    model.sigma.resize(p, p);
    for (int i = 0; i < p; ++i) {
      for (int j = 0; j < p; ++j) {
        model.sigma(i, j) = entries[static_cast<std::size_t>(i * p + j)];
      }
    }
  }

  if (file.has(section, "p")) {
    const long long declared = file.get_int(section, "p");
    if (declared != p) {
      throw ConfigError(section + ".p: declared p = " + std::to_string(declared) +
                        " does not match sigma dimension " + std::to_string(p));
    }
  }

  const std::vector<double> beta = file.get_number_list(section, "beta");
  if (static_cast<int>(beta.size()) != p) {
    throw ConfigError(section + ".beta: expected " + std::to_string(p) + " entries, got " +
                      std::to_string(beta.size()));
  }
  model.beta.resize(p);
  for (int j = 0; j < p; ++j) model.beta[j] = beta[static_cast<std::size_t>(j)];

  model.sigma_eps = file.get_double(section, "sigma_eps");
  model.intercept = file.get_double_or(section, "intercept", 0.0);
  model.validate();
  return model;
}

BlockDesign design_from_config(const ConfigFile& file) {
  BlockDesign design;
  design.n = static_cast<int>(file.get_int("design", "n"));
  design.n_blocks = static_cast<int>(file.get_int("design", "n_blocks"));
  design.block_size = static_cast<int>(file.get_int("design", "block_size"));
  design.n_signal = static_cast<int>(file.get_int("design", "n_signal"));
  design.rho = file.get_double("design", "rho");
  design.sigma_eps = file.get_double("design", "sigma_eps");
  design.signal_coef = file.get_double_or("design", "signal_coef", 1.0);
  design.validate();
  return design;
}

EstimatorConfig estimator_from_config(const ConfigFile& file) {
  EstimatorConfig cfg;
  cfg.lambda = file.get_double_or("estimator", "lambda", 0.5);
  cfg.n_splits = static_cast<int>(file.get_int_or("estimator", "n_splits", 50));
  cfg.split_fraction = file.get_double_or("estimator", "split_fraction", 0.5);
  cfg.validate();
  return cfg;
}

}  // namespace fvrlab
