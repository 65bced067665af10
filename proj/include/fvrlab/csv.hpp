#pragma once

#include <string>

#include "fvrlab/simulation.hpp"

namespace fvrlab {

// CSV column order shared by every curve-producing mode.
inline constexpr const char* kCsvHeader =
    "k,fdr_true,fdr_se,fvr_true_full,fvr_full_se,fvr_true_half,fvr_half_se,"
    "fvr_est,fvr_est_se,fvr_est_clipped,n_reps_at_k";

// %.17g so values round-trip exactly; NaN serializes as "nan".
std::string format_double(double v);

std::string result_to_csv(const MonteCarloResult& result);
std::string result_to_csv(const RateCurves& curves);  // estimator columns are nan

void write_file(const std::string& path, const std::string& content);

}  // namespace fvrlab
