#include "commands.hpp"
#include "sdn/version.hpp"

using namespace sdn::cli;

int main(int argc, char** argv) {
  CLI::App app{"Spectral denoising of low-rank matrices under weighted loss"};
  app.set_version_flag("--version", std::string(sdn::version_string));
  app.require_subcommand(1);

  CommonOptions common;
  WeightOptions weights;
  bool diagonal = false;
  auto* denoise = app.add_subcommand("denoise", "Optimal spectral denoiser for a weighted Frobenius loss");
  add_common(*denoise, common);
  denoise->add_option("--row-weights", weights.row_weights, "CSV: vector (diagonal) or matrix with p columns");
  denoise->add_option("--col-weights", weights.col_weights, "CSV: vector (diagonal) or matrix with n columns");
  auto* ri = denoise->add_option("--row-weight-indices", weights.row_indices, "JSON index array (row selection)");
  auto* ci = denoise->add_option("--col-weight-indices", weights.col_indices, "JSON index array (column selection)");
  ri->excludes("--row-weights");
  ci->excludes("--col-weights");
  denoise->add_flag("--diagonal", diagonal, "Use the closed-form diagonal denoiser");

  CommonOptions shrink_common;
  auto* shrink = app.add_subcommand("shrink", "Optimal singular value shrinkage");
  add_common(*shrink, shrink_common);

  CommonOptions loc_common;
  LocalizedOptions loc;
  auto* localized = app.add_subcommand("localized", "Localized denoising over a block partition");
  add_common(*localized, loc_common);
  auto* rb = localized->add_option("--row-blocks", loc.row_blocks, "Number of equispaced row blocks")->check(CLI::PositiveNumber);
  auto* cb = localized->add_option("--col-blocks", loc.col_blocks, "Number of equispaced column blocks")->check(CLI::PositiveNumber);
  localized->add_option("--row-partition", loc.row_partition, "JSON array of row index arrays")->excludes(rb);
  localized->add_option("--col-partition", loc.col_partition, "JSON array of column index arrays")->excludes(cb);

  CommonOptions sub_common;
  SubmatrixOptions sub;
  auto* submatrix = app.add_subcommand("submatrix", "Denoise a submatrix using the whole matrix");
  add_common(*submatrix, sub_common);
  submatrix->add_option("--rows", sub.rows, "JSON index array of rows")->required();
  submatrix->add_option("--cols", sub.cols, "JSON index array of columns")->required();
  submatrix->add_flag("--baseline", sub.baseline, "Shrink the submatrix alone instead");

  CommonOptions wh_common;
  WhitenOptions wh;
  auto* whiten = app.add_subcommand("whiten", "Denoising under doubly heteroscedastic noise");
  add_common(*whiten, wh_common);
  auto* cs = whiten->add_option("--cov-s", wh.cov_s, "Row noise covariance: CSV vector (diagonal) or p x p matrix");
  auto* ct = whiten->add_option("--cov-t", wh.cov_t, "Column noise covariance: CSV vector (diagonal) or n x n matrix");
  auto* est = whiten->add_flag("--estimate-cov", wh.estimate, "Estimate diagonal covariances from the data");
  est->excludes(cs)->excludes(ct);
  cs->needs(ct);
  ct->needs(cs);

  CommonOptions cp_common;
  CompleteOptions cp;
  auto* complete = app.add_subcommand("complete", "Denoising with missing entries (coordinate CSV input)");
  add_common(*complete, cp_common);
  auto* qr = complete->add_option("--q-row", cp.q_row, "Row sampling probabilities (one per line)");
  auto* qc = complete->add_option("--q-col", cp.q_col, "Column sampling probabilities (one per line)");
  auto* eq = complete->add_flag("--estimate-probabilities", cp.estimate_q, "Estimate probabilities from the pattern");
  eq->excludes(qr)->excludes(qc);
  qr->needs(qc);
  qc->needs(qr);
  complete->add_option("--rows", cp.dim_rows, "Number of rows (default: from --q-row)")->check(CLI::PositiveNumber);
  complete->add_option("--cols", cp.dim_cols, "Number of columns (default: from --q-col)")->check(CLI::PositiveNumber);
  complete->add_option("--noise-sd", cp.noise_sd, "Standard deviation of the entry noise")->check(CLI::PositiveNumber);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment");
  simulate->add_option("--scenario", sim.scenario, "Scenario name");
  simulate->add_option("--config", sim.config, "Experiment config JSON");
  simulate->add_option("--scale", sim.scale, "Shrink dimensions and replicates")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim.seed, "Base seed (overrides config and SPECTRAL_DENOISE_SEED)");
  simulate->add_option("--jobs", sim.jobs, "Worker threads")->check(CLI::PositiveNumber);
  simulate->add_option("--replicates", sim.replicates, "Replicates per point")->check(CLI::PositiveNumber);
  simulate->add_option("--output-dir", sim.output_dir, "Directory for report.json and replicates.csv");
  simulate->add_option("--report", sim.report, "Write the JSON report here as well");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ExitCode::ok : ExitCode::usage;
  }

  if (*denoise) return guarded("denoise", [&] { return run_denoise(common, weights, diagonal); });
  if (*shrink) return guarded("shrink", [&] { return run_shrink(shrink_common); });
  if (*localized) return guarded("localized", [&] { return run_localized(loc_common, loc); });
  if (*submatrix) return guarded("submatrix", [&] { return run_submatrix(sub_common, sub); });
  if (*whiten) return guarded("whiten", [&] { return run_whiten(wh_common, wh); });
  if (*complete) return guarded("complete", [&] { return run_complete(cp_common, cp); });
  return guarded("simulate", [&] { return run_simulate(sim); });
}
