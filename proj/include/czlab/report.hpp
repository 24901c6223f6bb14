#pragma once

// Check reporting: one CheckReport per verified statement, JSON-lines and
// CSV emission, and least-squares decay fits for the rate claims.

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace czlab {

struct Instance {
  int d = 0;
  int K = 0;
  int n = 0;
  double lambda = 0.0;  // 0 when not applicable
  std::uint64_t seed = 0;
  int range_lo = 0;
  int range_hi = 0;
  std::string family;
  std::string extra;
};

struct CheckReport {
  std::string check_id;
  Instance instance;
  double measured = 0.0;
  double bound = 0.0;      // numeric bound; ignored when empirical
  bool empirical = false;  // bound reported as "empirical"
  double ratio = 0.0;      // measured / bound where applicable
  bool pass = false;
  double tolerance = 0.0;
  std::string note;
  std::map<std::string, double> extras;
};

/// pass iff measured <= bound * (1 + tolerance); fills ratio.
CheckReport make_exact_report(std::string check_id, Instance inst,
                              double measured, double bound, double tolerance,
                              std::string note = {});
/// empirical: pass iff measured <= window (window <= 0 means always pass).
CheckReport make_empirical_report(std::string check_id, Instance inst,
                                  double measured, double window,
                                  std::string note = {});

nlohmann::json to_json(const CheckReport& r);

void write_jsonl(const std::filesystem::path& file,
                 std::span<const CheckReport> reports);
void write_summary_csv(const std::filesystem::path& file,
                       std::span<const CheckReport> reports);

struct DecaySweep {
  std::string parameter;  // e.g. "s" or "|n-k|"
  std::vector<std::pair<double, double>> samples;  // (param, ratio), ratio > 0
  double fitted_log2_slope = 0.0;
  double fit_residual = 0.0;  // rms residual of the least-squares fit
};

/// Least-squares fit of log2(ratio) against the parameter. Needs >= 4
/// samples with positive ratios.
DecaySweep fit_decay(std::string parameter,
                     std::vector<std::pair<double, double>> samples);

void write_sweep_csv(const std::filesystem::path& file, const DecaySweep& s);

}  // namespace czlab
