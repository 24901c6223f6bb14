#include "czlab/report.hpp"

#include <cmath>
#include <fstream>

#include "czlab/common.hpp"

namespace czlab {

CheckReport make_exact_report(std::string check_id, Instance inst,
                              double measured, double bound, double tolerance,
                              std::string note) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.instance = std::move(inst);
  r.measured = measured;
  r.bound = bound;
  r.tolerance = tolerance;
  r.ratio = bound != 0.0 ? measured / bound : measured;
  r.pass = measured <= bound * (1.0 + tolerance) ||
           (bound == 0.0 && measured <= tolerance);
  r.note = std::move(note);
  return r;
}

CheckReport make_empirical_report(std::string check_id, Instance inst,
                                  double measured, double window,
                                  std::string note) {
  CheckReport r;
  r.check_id = std::move(check_id);
  r.instance = std::move(inst);
  r.measured = measured;
  r.bound = window;
  r.empirical = true;
  r.ratio = window > 0.0 ? measured / window : 0.0;
  r.pass = window <= 0.0 || (std::isfinite(measured) && measured <= window);
  r.note = std::move(note);
  return r;
}

nlohmann::json to_json(const CheckReport& r) {
  nlohmann::json j;
  j["v"] = 1;
  j["check_id"] = r.check_id;
  j["instance"] = {{"d", r.instance.d},
                   {"K", r.instance.K},
                   {"n", r.instance.n},
                   {"lambda", r.instance.lambda},
                   {"seed", r.instance.seed},
                   {"range", {r.instance.range_lo, r.instance.range_hi}},
                   {"family", r.instance.family}};
  if (!r.instance.extra.empty()) j["instance"]["extra"] = r.instance.extra;
  j["measured"] = r.measured;
  if (r.empirical)
    j["bound"] = "empirical";
  else
    j["bound"] = r.bound;
  if (r.empirical && r.bound > 0.0) j["window"] = r.bound;
  j["ratio"] = r.ratio;
  j["pass"] = r.pass;
  j["tolerance"] = r.tolerance;
  if (!r.note.empty()) j["note"] = r.note;
  if (!r.extras.empty()) j["extras"] = r.extras;
  return j;
}

void write_jsonl(const std::filesystem::path& file,
                 std::span<const CheckReport> reports) {
  std::ofstream out(file);
  if (!out) throw InvalidInput("write_jsonl: cannot open " + file.string());
  for (const auto& r : reports) out << to_json(r).dump() << "\n";
}

void write_summary_csv(const std::filesystem::path& file,
                       std::span<const CheckReport> reports) {
  struct Row {
    int count = 0, passed = 0;
    double worst_ratio = 0.0, max_measured = 0.0;
  };
  std::map<std::string, Row> rows;
  for (const auto& r : reports) {
    Row& row = rows[r.check_id];
    row.count += 1;
    row.passed += r.pass ? 1 : 0;
    row.worst_ratio = std::max(row.worst_ratio, r.ratio);
    row.max_measured = std::max(row.max_measured, r.measured);
  }
  std::ofstream out(file);
  if (!out) throw InvalidInput("write_summary_csv: cannot open " + file.string());
  out << "check_id,count,passed,failed,worst_ratio,max_measured\n";
  for (const auto& [id, row] : rows)
    out << id << "," << row.count << "," << row.passed << ","
        << (row.count - row.passed) << "," << row.worst_ratio << ","
        << row.max_measured << "\n";
}

DecaySweep fit_decay(std::string parameter,
                     std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 4)
    throw InvalidInput("fit_decay: need at least 4 samples");
  DecaySweep s;
  s.parameter = std::move(parameter);
  s.samples = std::move(samples);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(s.samples.size());
  for (const auto& [x, r] : s.samples) {
    if (!(r > 0.0))
      throw InvalidInput("fit_decay: ratios must be positive");
    const double y = std::log2(r);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0) throw InvalidInput("fit_decay: degenerate abscissas");
  s.fitted_log2_slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - s.fitted_log2_slope * sx) / m;
  double rss = 0.0;
  for (const auto& [x, r] : s.samples) {
    const double e = std::log2(r) - (intercept + s.fitted_log2_slope * x);
    rss += e * e;
  }
  s.fit_residual = std::sqrt(rss / m);
  return s;
}

void write_sweep_csv(const std::filesystem::path& file, const DecaySweep& s) {
  std::ofstream out(file);
  if (!out) throw InvalidInput("write_sweep_csv: cannot open " + file.string());
  out << s.parameter << ",ratio\n";
  for (const auto& [x, r] : s.samples) out << x << "," << r << "\n";
}

}  // namespace czlab
