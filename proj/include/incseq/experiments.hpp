#pragma once

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "incseq/measures.hpp"
#include "incseq/moments.hpp"
#include "incseq/report.hpp"
#include "incseq/walklab.hpp"

namespace incseq {

enum class OutputFormat { kCsv, kJson };

struct MomentsParams {
  long n = 3;
  long k = 2;
};

struct VarianceScanParams {
  double exponent = 0.3;
  std::vector<long> n_list{100, 400, 1600};
  long k_budget = kScanDefaultKBudget;
};

struct LlnParams {
  long n = 400;
  double exponent = 0.3;
  long k = 0;  // 0: derive k = max(1, floor(n^exponent))
  double epsilon = 0.25;
  long samples = 1000;
};

struct TvParams {
  long n = 8;
  long k = 3;
  bool exact = false;
  long samples = 10000;
  long budget = kHistogramDefaultBudget;
};

struct WalkCheckParams {
  long lemma4_nmax = 2000;
  long envelope_nmax = 200;
  double L = 1.0;
  double c2 = 0.25;
  double cl2 = 2.0;
};

struct IdentityCheckParams {
  long N = 4;
  long jmax = 3;
};

struct ExponentScanParams {
  std::vector<double> l_list{0.2, 0.3, 0.4};
  std::vector<long> n_list{100, 400};
  double epsilon = 0.25;
  long samples = 1000;
};

using ExperimentParams = std::variant<MomentsParams, VarianceScanParams, LlnParams, TvParams,
                                      WalkCheckParams, IdentityCheckParams, ExponentScanParams>;

// A fully specified batch experiment: the seed determines every random
// draw; budgets are validated before any heavy work starts.
struct ExperimentConfig {
  ExperimentParams params;
  uint64_t seed = 0;
  std::string output;  // empty: <command>.<ext> under $INCSEQ_OUT_DIR (or cwd)
  OutputFormat format = OutputFormat::kCsv;
  int threads = 1;
  bool force = false;
};

namespace detail {

inline std::string ratio_num(const ExactRatio& r) { return boost::multiprecision::numerator(r).str(); }
inline std::string ratio_den(const ExactRatio& r) { return boost::multiprecision::denominator(r).str(); }

inline std::string command_name(const ExperimentParams& params) {
  struct Visitor {
    std::string operator()(const MomentsParams&) { return "moments"; }
    std::string operator()(const VarianceScanParams&) { return "variance-scan"; }
    std::string operator()(const LlnParams&) { return "lln"; }
    std::string operator()(const TvParams&) { return "tv"; }
    std::string operator()(const WalkCheckParams&) { return "walk-check"; }
    std::string operator()(const IdentityCheckParams&) { return "identity-check"; }
    std::string operator()(const ExponentScanParams&) { return "exponent-scan"; }
  };
  return std::visit(Visitor{}, params);
}

inline std::string default_output_path(const std::string& command, OutputFormat format) {
  const char* dir = std::getenv("INCSEQ_OUT_DIR");
  std::string path = dir && *dir ? std::string(dir) + "/" : std::string();
  path += command;
  path += format == OutputFormat::kJson ? ".json" : ".csv";
  return path;
}

inline Table scan_rows_table(const std::vector<ScanRow>& rows) {
  Table table;
  table.columns = {"n",       "k",       "first_num", "first_den",   "second_num",
                   "second_den", "var_num", "var_den",   "ratio_float", "ratio_norm_float"};
  for (const auto& row : rows) {
    const auto& s = row.summary;
    table.rows.push_back({fmt_long(s.n), fmt_long(s.k), ratio_num(s.first), ratio_den(s.first),
                          ratio_num(s.second), ratio_den(s.second), ratio_num(s.variance),
                          ratio_den(s.variance), fmt_double(row.ratio_float), fmt_double(row.ratio_norm)});
  }
  return table;
}

inline Table exceedance_table(const std::vector<ExponentScanCell>& cells) {
  Table table;
  table.columns = {"l", "n", "k", "epsilon", "exceedance", "stderr", "samples", "seed"};
  for (const auto& c : cells)
    table.rows.push_back({fmt_double(c.l), fmt_long(c.n), fmt_long(c.k), fmt_double(c.epsilon),
                          fmt_double(c.exceedance), fmt_double(c.std_error), fmt_long(c.samples),
                          std::to_string(c.seed)});
  return table;
}

inline Table envelope_table(const std::vector<EnvelopeRow>& rows) {
  Table table;
  table.columns = {"n", "a", "exact_num", "exact_den", "envelope", "ok"};
  for (const auto& row : rows)
    table.rows.push_back({fmt_long(row.n), fmt_long(row.a), ratio_num(row.exact), ratio_den(row.exact),
                          fmt_double(row.envelope), row.ok ? "1" : "0"});
  return table;
}

struct RunOutcome {
  std::vector<std::pair<std::string, Table>> files;  // path suffixes resolved by caller
  std::string summary;
  int exit_code = 0;
};

}  // namespace detail

// Execute one experiment: writes the result file(s), prints a one-line
// summary, returns the process exit code (0 ok, 2 budget exceeded,
// 3 internal invariant violation, 64 invalid arguments).
inline int run(const ExperimentConfig& config, std::ostream& log = std::cout) {
  const auto started = std::chrono::steady_clock::now();
  const std::string command = detail::command_name(config.params);
  std::string out_path = config.output.empty() ? detail::default_output_path(command, config.format) : config.output;

  try {
    std::vector<std::pair<std::string, Table>> files;
    std::string summary;
    int exit_code = 0;
    RandomStream master(config.seed);

    if (const auto* p = std::get_if<MomentsParams>(&config.params)) {
      const MomentSummary s = moment_summary(p->n, p->k);
      ScanRow row;
      row.summary = s;
      row.ratio_float = to_double(s.ratio);
      row.ratio_norm = row.ratio_float * static_cast<double>(s.n) / std::pow(static_cast<double>(s.k), 2.5);
      files.emplace_back(out_path, detail::scan_rows_table({row}));
      summary = "first=" + s.first.str() + " second=" + s.second.str() + " var=" + s.variance.str();
    } else if (const auto* p = std::get_if<VarianceScanParams>(&config.params)) {
      const auto rows = variance_scan(p->exponent, p->n_list, p->k_budget, config.force);
      files.emplace_back(out_path, detail::scan_rows_table(rows));
      char buf[128];
      std::snprintf(buf, sizeof buf, "variance-scan exponent=%g rows=%zu", p->exponent, rows.size());
      summary = buf;
    } else if (const auto* p = std::get_if<LlnParams>(&config.params)) {
      const long k = p->k > 0 ? p->k
                              : std::max(1L, static_cast<long>(std::floor(
                                                  std::pow(static_cast<double>(p->n), p->exponent))));
      char key[160];
      std::snprintf(key, sizeof key, "lln|n=%ld|k=%ld|eps=%.17g|samples=%ld", p->n, k, p->epsilon, p->samples);
      RandomStream stream = master.child(job_key(key));
      ExponentScanCell cell;
      cell.seed = stream.root_seed();
      const auto est = lln_exceedance(p->n, k, p->epsilon, p->samples, stream);
      cell.l = p->exponent;
      cell.n = p->n;
      cell.k = k;
      cell.epsilon = p->epsilon;
      cell.exceedance = est.value;
      cell.std_error = est.std_error;
      cell.samples = p->samples;
      files.emplace_back(out_path, detail::exceedance_table({cell}));
      char buf[160];
      std::snprintf(buf, sizeof buf, "lln n=%ld k=%ld eps=%g: exceedance=%.6g stderr=%.3g", p->n, k,
                    p->epsilon, est.value, est.std_error);
      summary = buf;
    } else if (const auto* p = std::get_if<TvParams>(&config.params)) {
      Table table;
      table.columns = {"n", "k", "mode", "tv_num", "tv_den", "tv_float", "stderr"};
      char buf[160];
      if (p->exact) {
        const long budget = config.force ? std::max(p->budget, p->n) : p->budget;
        const TVReport report = total_variation_exact(p->n, p->k, budget);
        table.rows.push_back({fmt_long(p->n), fmt_long(p->k), "exact", detail::ratio_num(report.tv_exact),
                              detail::ratio_den(report.tv_exact), fmt_double(report.tv), "0"});
        std::snprintf(buf, sizeof buf, "tv n=%ld k=%ld: tv=%s (exact)", p->n, p->k, report.tv_exact.str().c_str());
      } else {
        char key[160];
        std::snprintf(key, sizeof key, "tv|n=%ld|k=%ld|samples=%ld", p->n, p->k, p->samples);
        RandomStream stream = master.child(job_key(key));
        const TVReport report = total_variation_mc(p->n, p->k, p->samples, stream);
        table.rows.push_back({fmt_long(p->n), fmt_long(p->k), "estimated", "", "", fmt_double(report.tv),
                              fmt_double(report.std_error)});
        std::snprintf(buf, sizeof buf, "tv n=%ld k=%ld: tv=%.6g stderr=%.3g (mc)", p->n, p->k, report.tv,
                      report.std_error);
      }
      files.emplace_back(out_path, table);
      summary = buf;
    } else if (const auto* p = std::get_if<WalkCheckParams>(&config.params)) {
      const auto band = lemma4_band(p->lemma4_nmax);
      const EnvelopeReport report = lemma6_8_envelopes(p->envelope_nmax, p->L, p->c2, p->cl2);
      std::string stem = out_path;
      const auto dot = stem.rfind('.');
      const std::string ext = dot == std::string::npos ? "" : stem.substr(dot);
      if (dot != std::string::npos) stem = stem.substr(0, dot);
      files.emplace_back(stem + "_upper" + ext, detail::envelope_table(report.upper));
      files.emplace_back(stem + "_lower" + ext, detail::envelope_table(report.lower));
      const bool band_ok = band.first > 0.0 && std::isfinite(band.second);
      char buf[220];
      std::snprintf(buf, sizeof buf,
                    "walk-check band=[%.4f,%.4f] c1=%.4f (c2=%g) cl1=%.4f (cl2=%g) violations=%ld %s",
                    band.first, band.second, report.c1, report.c2, report.cl1, report.cl2,
                    report.violations, band_ok && report.violations == 0 ? "OK" : "FAIL");
      summary = buf;
      if (!band_ok || report.violations != 0) exit_code = 3;
    } else if (const auto* p = std::get_if<IdentityCheckParams>(&config.params)) {
      Table table;
      table.columns = {"N", "j", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "ok"};
      bool all_ok = true;
      for (long N = 1; N <= p->N; ++N)
        for (long j = 1; j <= p->jmax; ++j) {
          const auto [lhs, rhs] = identity_4_2(N, j);
          const bool ok = lhs == rhs;
          all_ok = all_ok && ok;
          table.rows.push_back({fmt_long(N), fmt_long(j), detail::ratio_num(lhs), detail::ratio_den(lhs),
                                detail::ratio_num(rhs), detail::ratio_den(rhs), ok ? "1" : "0"});
        }
      files.emplace_back(out_path, table);
      summary = all_ok ? "OK" : "MISMATCH";
      if (!all_ok) exit_code = 3;
    } else if (const auto* p = std::get_if<ExponentScanParams>(&config.params)) {
      const auto cells = exponent_scan(p->l_list, p->n_list, p->epsilon, p->samples, master, config.threads);
      files.emplace_back(out_path, detail::exceedance_table(cells));
      char buf[96];
      std::snprintf(buf, sizeof buf, "exponent-scan cells=%zu", cells.size());
      summary = buf;
    }

    const auto elapsed =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(std::chrono::steady_clock::now() - started);
    RunMeta meta;
    meta.seed = config.seed;
    meta.elapsed_ms = elapsed.count();
    for (const auto& [path, table] : files)
      write_table_file(path, table, meta, config.format == OutputFormat::kJson);
    log << summary << '\n';
    return exit_code;
  } catch (const BudgetError& err) {
    log << "budget exceeded: " << err.what() << '\n';
    return 2;
  } catch (const InvariantViolation& err) {
    log << "invariant violation: " << err.what() << '\n';
    return 3;
  } catch (const std::domain_error& err) {
    log << "invalid arguments: " << err.what() << '\n';
    return 64;
  } catch (const std::invalid_argument& err) {
    log << "invalid arguments: " << err.what() << '\n';
    return 64;
  }
}

}  // namespace incseq
