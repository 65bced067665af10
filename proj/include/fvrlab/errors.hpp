#pragma once

#include <stdexcept>
#include <string>

namespace fvrlab {

// A population model violates a structural invariant (dimensions, symmetry,
// positive semidefiniteness, negative noise).
class InvalidModelError : public std::invalid_argument {
 public:
  explicit InvalidModelError(const std::string& what) : std::invalid_argument(what) {}
};

// A block-design specification is out of range (e.g. rho >= 1).
class InvalidDesignError : public std::invalid_argument {
 public:
  explicit InvalidDesignError(const std::string& what) : std::invalid_argument(what) {}
};

// Sparsest-projection search cannot run: the restricted covariance is
// singular and the selected set exceeds the subset-enumeration cap.
class DegenerateProjectionError : public std::runtime_error {
 public:
  explicit DegenerateProjectionError(const std::string& what) : std::runtime_error(what) {}
};

// Subset enumeration was requested for a selected set above the cap.
class EnumerationCapError : public std::runtime_error {
 public:
  explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

// The restricted covariance for a dependence graph is numerically singular.
class DegenerateGraphError : public std::runtime_error {
 public:
  explicit DegenerateGraphError(const std::string& what) : std::runtime_error(what) {}
};

// The inference half of a split has too few rows for the nested F test.
class InsufficientHoldoutError : public std::runtime_error {
 public:
  explicit InsufficientHoldoutError(const std::string& what) : std::runtime_error(what) {}
};

// Bad key or value in a config or model file; the message names the key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fvrlab
