// Batch front door: wires the exact and Monte Carlo machinery into
// reproducible experiments with CSV/JSON output and a master seed.

#include <CLI11.hpp>

#include "incseq/incseq.hpp"

namespace {

void add_common(CLI::App* cmd, incseq::ExperimentConfig& config, std::string& format) {
  cmd->add_option("--seed", config.seed, "master seed; determines all stochastic output");
  cmd->add_option("--output,-o", config.output, "output file (default: <command>.<ext> under $INCSEQ_OUT_DIR)");
  cmd->add_option("--format", format, "output format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--threads", config.threads, "worker threads for job-level parallelism")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--force", config.force, "override desk-scale budgets");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incseq: exact and Monte Carlo experiments on increasing-subsequence counts"};
  app.require_subcommand(1);

  incseq::ExperimentConfig config;
  std::string format = "csv";

  incseq::MomentsParams moments;
  auto* cmd_moments = app.add_subcommand("moments", "exact E Z, E Z^2, Var for one (n, k)");
  cmd_moments->add_option("--n", moments.n, "permutation size")->required();
  cmd_moments->add_option("--k", moments.k, "subsequence length")->required();
  add_common(cmd_moments, config, format);

  incseq::VarianceScanParams vscan;
  auto* cmd_vscan = app.add_subcommand("variance-scan", "exact moment table along k = floor(n^exponent)");
  cmd_vscan->add_option("--exponent", vscan.exponent, "growth exponent in (0, 0.5)")->required();
  cmd_vscan->add_option("--n", vscan.n_list, "list of n values")->required()->delimiter(',');
  cmd_vscan->add_option("--k-budget", vscan.k_budget, "refuse k beyond this without --force");
  add_common(cmd_vscan, config, format);

  incseq::LlnParams lln;
  auto* cmd_lln = app.add_subcommand("lln", "Monte Carlo exceedance P(|Z/EZ - 1| > eps)");
  cmd_lln->add_option("--n", lln.n, "permutation size")->required();
  cmd_lln->add_option("--exponent", lln.exponent, "k = max(1, floor(n^exponent))");
  cmd_lln->add_option("--k", lln.k, "explicit k (overrides --exponent)");
  cmd_lln->add_option("--eps", lln.epsilon, "deviation threshold")->required();
  cmd_lln->add_option("--samples", lln.samples, "Monte Carlo sample count")->required();
  add_common(cmd_lln, config, format);

  incseq::TvParams tv;
  auto* cmd_tv = app.add_subcommand("tv", "total variation distance of mu_{n;k} from uniform");
  cmd_tv->add_option("--n", tv.n, "permutation size")->required();
  cmd_tv->add_option("--k", tv.k, "subsequence length")->required();
  cmd_tv->add_flag("--exact", tv.exact, "exhaustive enumeration (n <= budget) instead of Monte Carlo");
  cmd_tv->add_option("--samples", tv.samples, "Monte Carlo sample count");
  cmd_tv->add_option("--budget", tv.budget, "enumeration budget for --exact");
  add_common(cmd_tv, config, format);

  incseq::WalkCheckParams walk;
  auto* cmd_walk = app.add_subcommand("walk-check", "lazy-walk band and 2D return-probability envelopes");
  cmd_walk->add_option("--nmax", walk.lemma4_nmax, "lazy-walk horizon");
  cmd_walk->add_option("--envelope-nmax", walk.envelope_nmax, "2D grid horizon");
  cmd_walk->add_option("--L", walk.L, "offset window |a| <= L sqrt(n)");
  cmd_walk->add_option("--c2", walk.c2, "upper-envelope rate constant");
  cmd_walk->add_option("--cl2", walk.cl2, "lower-envelope rate constant");
  add_common(cmd_walk, config, format);

  incseq::IdentityCheckParams identity;
  auto* cmd_identity = app.add_subcommand("identity-check", "bridge checkpoint identity, exact both sides");
  cmd_identity->add_option("--N", identity.N, "check all 1 <= N' <= N")->required();
  cmd_identity->add_option("--jmax", identity.jmax, "check all 1 <= j <= jmax")->required();
  add_common(cmd_identity, config, format);

  incseq::ExponentScanParams escan;
  auto* cmd_escan = app.add_subcommand("exponent-scan", "exceedance matrix over (l, n) for the critical-exponent probe");
  cmd_escan->add_option("--l", escan.l_list, "list of exponents in (0, 0.5)")->required()->delimiter(',');
  cmd_escan->add_option("--n", escan.n_list, "list of n values")->required()->delimiter(',');
  cmd_escan->add_option("--eps", escan.epsilon, "deviation threshold")->required();
  cmd_escan->add_option("--samples", escan.samples, "samples per cell")->required();
  add_common(cmd_escan, config, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  config.format = format == "json" ? incseq::OutputFormat::kJson : incseq::OutputFormat::kCsv;
  if (cmd_moments->parsed()) config.params = moments;
  if (cmd_vscan->parsed()) config.params = vscan;
  if (cmd_lln->parsed()) config.params = lln;
  if (cmd_tv->parsed()) config.params = tv;
  if (cmd_walk->parsed()) config.params = walk;
  if (cmd_identity->parsed()) config.params = identity;
  if (cmd_escan->parsed()) config.params = escan;

  return incseq::run(config);
}
