#include "fvrlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fvrlab/errors.hpp"
#include "fvrlab/linalg.hpp"

namespace fvrlab {

namespace {

void require_nonempty(const SelectedSet& selected, const char* op) {
  if (selected.empty()) {
    throw std::invalid_argument(std::string(op) + ": selected set is empty");
  }
}

void require_in_range(const PopulationModel& model, const SelectedSet& selected, const char* op) {
  if (!selected.empty() && selected.indices().back() >= model.dim()) {
    throw std::invalid_argument(std::string(op) + ": index out of range for model with p = " +
                                std::to_string(model.dim()));
  }
}

FalseSelectionReport make_report(int v, int size, Criterion criterion) {
  return FalseSelectionReport{v, Rational::of(v, size), criterion};
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - (k - i)) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) {
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

// Covariance vector cov(x, proj of x'beta onto x_subset), a p-vector that
// identifies the projection uniquely even when the restriction is singular.
Eigen::VectorXd projection_cov_vector(const PopulationModel& model,
                                      const Eigen::VectorXd& cross_full,
                                      const std::vector<int>& subset) {
  if (subset.empty()) return Eigen::VectorXd::Zero(model.dim());
  const Eigen::MatrixXd restricted = submatrix(model.sigma, subset, subset);
  const Eigen::VectorXd rhs = subvector(cross_full, subset);
  const Eigen::VectorXd coef = restricted.colPivHouseholderQr().solve(rhs);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(model.dim());
  for (std::size_t i = 0; i < subset.size(); ++i) {
    out += coef(static_cast<Eigen::Index>(i)) * model.sigma.col(subset[i]);
  }
  return out;
}

// Enumerates subsets of `selected` by increasing size and lexicographic
// order, invoking visit(subset_indices) until it returns true; returns the
// size at which the first hit happened, or -1.
template <class Visit>
int scan_subsets(const std::vector<int>& selected, Visit&& visit) {
  const int m = static_cast<int>(selected.size());
  for (int size = 0; size <= m; ++size) {
    std::vector<int> positions(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) positions[static_cast<std::size_t>(i)] = i;
    bool more = true;
    while (more) {
      std::vector<int> subset(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) {
        subset[static_cast<std::size_t>(i)] = selected[static_cast<std::size_t>(
            positions[static_cast<std::size_t>(i)])];
      }
      if (visit(subset)) return size;
      more = size > 0 && next_combination(positions, m);
      if (size == 0) break;
    }
  }
  return -1;
}

}  // namespace

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::kMarginal:
      return "marginal";
    case Criterion::kFull:
      return "full";
    case Criterion::kProjected:
      return "projected";
  }
  return "?";
}

FalseSelectionReport marginal_false_count(const PopulationModel& model,
                                          const SelectedSet& selected) {
  require_nonempty(selected, "marginal_false_count");
  require_in_range(model, selected, "marginal_false_count");
  const Eigen::VectorXd cross = model.sigma * model.beta;
  const double tol = kZeroTolScale * max_abs(cross);
  int v = 0;
  for (int j : selected.indices()) {
    if (std::abs(cross[j]) <= tol) ++v;
  }
  return make_report(v, selected.size(), Criterion::kMarginal);
}

FalseSelectionReport full_model_false_count(const PopulationModel& model,
                                            const SelectedSet& selected) {
  require_nonempty(selected, "full_model_false_count");
  require_in_range(model, selected, "full_model_false_count");
  const double tol = kZeroTolScale * max_abs(model.beta);
  int v = 0;
  for (int j : selected.indices()) {
    if (std::abs(model.beta[j]) <= tol) ++v;
  }
  return make_report(v, selected.size(), Criterion::kFull);
}

FalseSelectionReport projected_false_count(const PopulationModel& model,
                                           const SelectedSet& selected) {
  require_nonempty(selected, "projected_false_count");
  require_in_range(model, selected, "projected_false_count");
  const int m = selected.size();

  const AugmentedCovariance aug = build_augmented_covariance(model);
  std::vector<int> nodes = selected.indices();
  nodes.push_back(model.dim());
  const Eigen::MatrixXd restricted = submatrix(aug.matrix, nodes, nodes);
  if (const auto precision = sym_inverse(restricted)) {
    const double tol = zero_threshold(*precision);
    int v = 0;
    for (int i = 0; i < m; ++i) {
      if (std::abs((*precision)(m, i)) <= tol) ++v;
    }
    return make_report(v, m, Criterion::kProjected);
  }

  try {
    const SelectedSet minimal = minimal_subset(model, selected);
    return make_report(m - minimal.size(), m, Criterion::kProjected);
  } catch (const EnumerationCapError& e) {
    throw DegenerateProjectionError(
        "projected_false_count: restricted covariance is singular and the enumeration "
        "fallback failed: " +
        std::string(e.what()));
  }
}

SelectedSet minimal_subset(const PopulationModel& model, const SelectedSet& selected) {
  require_in_range(model, selected, "minimal_subset");
  if (selected.size() > kEnumerationCap) {
    throw EnumerationCapError("minimal_subset: |selected| = " + std::to_string(selected.size()) +
                              " exceeds the enumeration cap (" + std::to_string(kEnumerationCap) +
                              ")");
  }
  const Eigen::VectorXd cross_full = model.sigma * model.beta;
  const double tol = kZeroTolScale * max_abs(cross_full);
  const Eigen::VectorXd target = projection_cov_vector(model, cross_full, selected.indices());

  std::vector<int> winner;
  scan_subsets(selected.indices(), [&](const std::vector<int>& subset) {
    const Eigen::VectorXd candidate = projection_cov_vector(model, cross_full, subset);
    if ((candidate - target).cwiseAbs().maxCoeff() <= tol) {
      winner = subset;
      return true;
    }
    return false;
  });
  return SelectedSet(winner, model.dim());
}

int misordering_count(const PopulationModel& model, const SelectionPath& path, int k) {
  if (k < 0 || k > path.length()) {
    throw std::invalid_argument("misordering_count: k = " + std::to_string(k) +
                                " exceeds path length " + std::to_string(path.length()));
  }
  if (k == 0) return 0;
  std::vector<int> prefix(path.order.begin(), path.order.begin() + k);
  const SelectedSet selected(prefix, model.dim());
  if (selected.size() > kEnumerationCap) {
    throw EnumerationCapError("misordering_count: prefix size " + std::to_string(k) +
                              " exceeds the enumeration cap (" + std::to_string(kEnumerationCap) +
                              ")");
  }

  const Eigen::VectorXd cross_full = model.sigma * model.beta;
  const double tol = kZeroTolScale * max_abs(cross_full);
  const Eigen::VectorXd target =
      projection_cov_vector(model, cross_full, selected.indices());

  // Path position of each prefix variable.
  auto position = [&](int variable) {
    for (int i = 0; i < k; ++i) {
      if (path.order[static_cast<std::size_t>(i)] == variable) return i;
    }
    return k;
  };

  // t(B): prefix variables outside B that were selected before the last
  // member of B entered.
  auto moves_for = [&](const std::vector<int>& subset) {
    if (subset.empty()) return 0;
    int last = 0;
    for (int b : subset) last = std::max(last, position(b));
    int t = 0;
    for (int v : selected.indices()) {
      if (std::find(subset.begin(), subset.end(), v) == subset.end() && position(v) < last) ++t;
    }
    return t;
  };

  // All minimal subsets share the smallest size; take the fewest moves.
  int minimal_size = -1;
  int best = std::numeric_limits<int>::max();
  scan_subsets(selected.indices(), [&](const std::vector<int>& subset) {
    if (minimal_size >= 0 && static_cast<int>(subset.size()) > minimal_size) return true;
    const Eigen::VectorXd candidate = projection_cov_vector(model, cross_full, subset);
    if ((candidate - target).cwiseAbs().maxCoeff() <= tol) {
      minimal_size = static_cast<int>(subset.size());
      best = std::min(best, moves_for(subset));
    }
    return false;  // keep scanning the rest of this size
  });
  return best;
}

}  // namespace fvrlab
