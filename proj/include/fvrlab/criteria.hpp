#pragma once

#include "fvrlab/population_model.hpp"
#include "fvrlab/rational.hpp"
#include "fvrlab/selected_set.hpp"
#include "fvrlab/selection.hpp"

namespace fvrlab {

enum class Criterion { kMarginal, kFull, kProjected };

const char* criterion_name(Criterion c);

// Count and exact proportion of false selections under one criterion.
struct FalseSelectionReport {
  int v = 0;
  Rational proportion;
  Criterion criterion = Criterion::kMarginal;
};

// A selection j is false when cov(y, x_j) = 0.
FalseSelectionReport marginal_false_count(const PopulationModel& model,
                                          const SelectedSet& selected);

// A selection j is false when beta_j = 0 in the full model (FDP).
FalseSelectionReport full_model_false_count(const PopulationModel& model,
                                            const SelectedSet& selected);

// A selection j is false when its coefficient vanishes in the model projected
// onto the selected variables (FVP).  Computed as the number of zeros in the
// y-row of the inverse restricted augmented covariance; a singular
// restriction falls back to |selected| - |minimal_subset|.
FalseSelectionReport projected_false_count(const PopulationModel& model,
                                           const SelectedSet& selected);

// Smallest subset of `selected` whose projection of the true mean matches the
// projection onto all of `selected`; ties broken by the lexicographically
// smallest index set.  |selected| is capped at kEnumerationCap.
SelectedSet minimal_subset(const PopulationModel& model, const SelectedSet& selected);

// Fewest forward moves of noise variables separating the first-k prefix of
// `path` from an ordering that puts some minimal subset of the prefix first:
// the minimum over minimal subsets B of #{v in prefix \ B : v precedes some
// b in B along the path}.
int misordering_count(const PopulationModel& model, const SelectionPath& path, int k);

}  // namespace fvrlab
