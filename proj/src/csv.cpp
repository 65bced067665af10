#include "fvrlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "fvrlab/errors.hpp"

namespace fvrlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Row {
  int k;
  double fdr, fdr_se;
  double fvr_full, fvr_full_se;
  double fvr_half, fvr_half_se;
  double est, est_se;
  double est_clipped;
  int n_reps;
};

std::string rows_to_csv(const std::vector<Row>& rows) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const Row& r : rows) {
    out += std::to_string(r.k);
    for (double v : {r.fdr, r.fdr_se, r.fvr_full, r.fvr_full_se, r.fvr_half, r.fvr_half_se,
                     r.est, r.est_se, r.est_clipped}) {
      out.push_back(',');
      out += format_double(v);
    }
    out.push_back(',');
    out += std::to_string(r.n_reps);
    out.push_back('\n');
  }
  return out;
}

int min_count(std::initializer_list<int> counts) {
  int m = -1;
  for (int c : counts) {
    if (c >= 0 && (m < 0 || c < m)) m = c;
  }
  return m < 0 ? 0 : m;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string result_to_csv(const MonteCarloResult& result) {
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(result.k_max));
  for (int k = 0; k < result.k_max; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    rows.push_back(Row{
        k + 1,
        result.true_fdr[i].mean, result.true_fdr[i].se,
        result.true_fvr_full[i].mean, result.true_fvr_full[i].se,
        result.true_fvr_half[i].mean, result.true_fvr_half[i].se,
        result.fvr_est[i].mean, result.fvr_est[i].se,
        result.fvr_est_clipped[i],
        min_count({result.true_fdr[i].count, result.true_fvr_full[i].count,
                   result.true_fvr_half[i].count, result.fvr_est[i].count}),
    });
  }
  return rows_to_csv(rows);
}

std::string result_to_csv(const RateCurves& curves) {
  std::vector<Row> rows;
  rows.reserve(static_cast<std::size_t>(curves.k_max));
  for (int k = 0; k < curves.k_max; ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    rows.push_back(Row{
        k + 1,
        curves.fdr[i].mean, curves.fdr[i].se,
        curves.fvr[i].mean, curves.fvr[i].se,
        kNaN, kNaN, kNaN, kNaN, kNaN,
        min_count({curves.fdr[i].count, curves.fvr[i].count}),
    });
  }
  return rows_to_csv(rows);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot open output file '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw ConfigError("failed writing output file '" + path + "'");
  }
}

}  // namespace fvrlab
