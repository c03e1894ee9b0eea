#pragma once

// CSV and JSON emission for experiment results.
//
// CSV carries one row per grid point under a fixed documented header.
// JSON carries {command, config, library_version, master_seed, rows}; the
// config echo holds every semantic knob (but no execution-only settings like
// thread count), so a JSON output can be replayed via --config.

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "rdg/experiments.hpp"
#include "rdg/version.hpp"

namespace rdg {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// -- sweep ---------------------------------------------------------------------

inline constexpr const char* kSweepCsvHeader =
    "n,alpha,p,clamped,trials,hit_count,estimate,wilson_low,wilson_high,mean_copies";

inline void write_csv(std::ostream& out, const SweepResult& r) {
  out << kSweepCsvHeader << "\n";
  for (const SweepRow& row : r.rows) {
    out << row.n << ',' << format_double(row.alpha) << ',' << format_double(row.p) << ','
        << (row.clamped ? 1 : 0) << ',' << row.trials << ',' << row.hit_count << ','
        << format_double(row.estimate) << ',' << format_double(row.wilson_low) << ','
        << format_double(row.wilson_high) << ','
        << (row.mean_copies ? format_double(*row.mean_copies) : std::string()) << "\n";
  }
}

inline Json rows_json(const SweepResult& r) {
  Json rows = Json::array();
  for (const SweepRow& row : r.rows) {
    Json j{{"n", row.n},
           {"alpha", row.alpha},
           {"p", row.p},
           {"clamped", row.clamped},
           {"trials", row.trials},
           {"hit_count", row.hit_count},
           {"estimate", row.estimate},
           {"wilson_low", row.wilson_low},
           {"wilson_high", row.wilson_high}};
    if (row.mean_copies) j["mean_copies"] = *row.mean_copies;
    rows.push_back(j);
  }
  return rows;
}

// -- lln -------------------------------------------------------------------------

inline constexpr const char* kLlnCsvHeader = "n,p,trials,expected_copies,quantile,deviation";

inline const std::vector<double>& lln_report_quantiles() {
  static const std::vector<double> qs{0.25, 0.5, 0.75, 0.9, 0.95, 0.99, 1.0};
  return qs;
}

inline void write_csv(std::ostream& out, const LlnResult& r) {
  out << kLlnCsvHeader << "\n";
  for (double q : lln_report_quantiles())
    out << r.n << ',' << format_double(r.p) << ',' << r.trials << ','
        << format_double(r.expected_copies) << ',' << format_double(q) << ','
        << format_double(r.quantile(q)) << "\n";
}

inline Json rows_json(const LlnResult& r) {
  Json rows = Json::array();
  for (double q : lln_report_quantiles())
    rows.push_back(Json{{"n", r.n},
                        {"p", r.p},
                        {"trials", r.trials},
                        {"expected_copies", r.expected_copies},
                        {"quantile", q},
                        {"deviation", r.quantile(q)}});
  return rows;
}

// -- poisson ----------------------------------------------------------------------

inline constexpr const char* kPoissonCsvHeader =
    "n,c,p,trials,lambda_theory,lambda_exact,empirical_mean,tv_distance,count,frequency";

inline void write_csv(std::ostream& out, const PoissonResult& r) {
  out << kPoissonCsvHeader << "\n";
  for (const auto& [count, freq] : r.pmf_counts) {
    out << r.n << ',' << format_double(r.c) << ',' << format_double(r.p) << ',' << r.trials
        << ',' << format_double(r.lambda_theory) << ',' << format_double(r.lambda_exact)
        << ',' << format_double(r.empirical_mean) << ',' << format_double(r.tv_distance)
        << ',' << count << ',' << format_double(double(freq) / double(r.trials)) << "\n";
  }
}

inline Json rows_json(const PoissonResult& r) {
  Json pmf = Json::array();
  for (const auto& [count, freq] : r.pmf_counts)
    pmf.push_back(Json{{"count", count},
                       {"occurrences", freq},
                       {"frequency", double(freq) / double(r.trials)}});
  return Json::array({Json{{"n", r.n},
                           {"c", r.c},
                           {"p", r.p},
                           {"trials", r.trials},
                           {"lambda_theory", r.lambda_theory},
                           {"lambda_exact", r.lambda_exact},
                           {"empirical_mean", r.empirical_mean},
                           {"tv_distance", r.tv_distance},
                           {"pmf", pmf}}});
}

// -- uniformity ---------------------------------------------------------------------

inline constexpr const char* kUniformityCsvHeader =
    "n,f,samples,distinct_x,min_count,max_count,spread,reference_m,min_over_ref,max_over_ref";

inline void write_csv(std::ostream& out, const std::vector<UniformityRow>& rows) {
  out << kUniformityCsvHeader << "\n";
  for (const UniformityRow& row : rows) {
    out << row.n << ',' << row.f << ',' << row.samples << ',' << row.distinct_x << ','
        << row.min_count.str() << ',' << row.max_count.str() << ','
        << format_double(row.spread) << ',' << format_double(row.reference_m) << ','
        << format_double(row.min_over_ref) << ',' << format_double(row.max_over_ref)
        << "\n";
  }
}

inline Json rows_json(const std::vector<UniformityRow>& rows) {
  Json out = Json::array();
  for (const UniformityRow& row : rows) {
    Json xs = Json::array();
    for (const auto& s : row.x_samples)
      xs.push_back(Json{{"x", s.x}, {"multiplicity", s.multiplicity},
                        {"count", s.count.str()}});
    out.push_back(Json{{"n", row.n},
                       {"f", row.f},
                       {"samples", row.samples},
                       {"distinct_x", row.distinct_x},
                       {"min_count", row.min_count.str()},
                       {"max_count", row.max_count.str()},
                       {"spread", row.spread},
                       {"reference_m", row.reference_m},
                       {"min_over_ref", row.min_over_ref},
                       {"max_over_ref", row.max_over_ref},
                       {"x_samples", xs}});
  }
  return out;
}

// -- convergence ----------------------------------------------------------------------

inline constexpr const char* kConvergenceCsvHeader =
    "n,monomorphisms,analytic_m,ratio,ratio_exact";

inline void write_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << kConvergenceCsvHeader << "\n";
  for (const ConvergenceRow& row : rows)
    out << row.n << ',' << row.monomorphisms.str() << ',' << format_double(row.analytic)
        << ',' << format_double(row.ratio) << ',' << to_string(row.ratio_exact) << "\n";
}

inline Json rows_json(const std::vector<ConvergenceRow>& rows) {
  Json out = Json::array();
  for (const ConvergenceRow& row : rows)
    out.push_back(Json{{"n", row.n},
                       {"monomorphisms", row.monomorphisms.str()},
                       {"analytic_m", row.analytic},
                       {"ratio", row.ratio},
                       {"ratio_exact", to_string(row.ratio_exact)}});
  return out;
}

// -- envelope ------------------------------------------------------------------------

inline void write_json_document(std::ostream& out, const std::string& command,
                                const Json& config, std::uint64_t master_seed,
                                const Json& rows) {
  Json doc{{"command", command},
           {"config", config},
           {"library_version", kVersion},
           {"master_seed", master_seed},
           {"rows", rows}};
  out << doc.dump(2) << "\n";
}

// Simple key/value CSV for scalar reports (graph info, pattern analyze, ...).
inline void write_kv_csv(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv) {
  out << "key,value\n";
  for (const auto& [k, v] : kv) out << k << ',' << v << "\n";
}

}  // namespace rdg
