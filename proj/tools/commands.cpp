#include "commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <nlohmann/json.hpp>

#include "sdn/applications.hpp"
#include "sdn/denoise.hpp"
#include "sdn/errors.hpp"
#include "sdn/io.hpp"
#include "sdn/localized.hpp"
#include "sdn/simlab/experiment.hpp"
#include "sdn/version.hpp"

namespace sdn::cli {

using nlohmann::json;

namespace {

json to_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const std::vector<Index>& v) {
  json a = json::array();
  for (Index i : v) a.push_back(i);
  return a;
}

json spikes_json(const SpikeParams& sp) {
  return {{"gamma", sp.gamma.value()},
          {"rank", sp.rank()},
          {"lambda", to_json(sp.lambda)},
          {"t", to_json(sp.t)},
          {"c", to_json(sp.c)},
          {"c_tilde", to_json(sp.c_tilde)}};
}

json result_json(const DenoiseResult& r) {
  json j = spikes_json(r.spikes);
  j["rank_zero"] = r.rank_zero;
  j["alpha"] = to_json(r.geometry.alpha);
  j["beta"] = to_json(r.geometry.beta);
  j["mu"] = r.geometry.mu;
  j["nu"] = r.geometry.nu;
  j["amse_estimate"] = r.amse_estimate;
  j["amse_clamped"] = r.amse_clamped;
  j["clipped_components"] = to_json(r.clipped_components);
  return j;
}

json common_config(const CommonOptions& c) {
  json j{{"input", c.input}, {"output", c.output}, {"margin", c.margin}};
  j["rank"] = c.rank ? json(*c.rank) : json(nullptr);
  j["report"] = c.report.empty() ? json(nullptr) : json(c.report);
  return j;
}

DenoiseOptions denoise_options(const CommonOptions& c) {
  DenoiseOptions opts;
  if (c.rank) {
    if (*c.rank < 0) throw InvalidArgument("--rank must be nonnegative");
    opts.rank.rank = static_cast<Index>(*c.rank);
  }
  if (!(c.margin >= 0.0)) throw InvalidArgument("--margin must be nonnegative");
  opts.rank.margin = c.margin;
  return opts;
}

Matrix read_input(const std::string& path) { return io::read_dense_csv_file(path).values; }

void write_outputs(const CommonOptions& c, const std::string& command, const Matrix& estimate, json config,
                   json result) {
  io::write_dense_csv_file(c.output, estimate);
  if (c.report.empty()) return;
  json rep{{"schema", 1},
           {"command", command},
           {"version", version_string},
           {"config", std::move(config)},
           {"result", std::move(result)}};
  std::ofstream out(c.report);
  if (!out) throw IoError("cannot write report '" + c.report + "'");
  out << rep.dump(2) << '\n';
  if (!out) throw IoError("failed writing report '" + c.report + "'");
}

// A vector file of length dim is a diagonal; a matrix with dim columns is dense.
WeightOperator read_weights(const std::string& path, Index dim, const char* which) {
  const Matrix m = read_input(path);
  if ((m.cols() == 1 || m.rows() == 1) && m.size() == dim) {
    return WeightOperator::diagonal(Eigen::Map<const Vector>(m.data(), dim));
  }
  if (m.cols() == dim) return WeightOperator::dense(m);
  throw InvalidArgument(std::string(which) + " weights in '" + path + "' have shape " + std::to_string(m.rows()) +
                        "x" + std::to_string(m.cols()) + ", expected a vector of length or a matrix with " +
                        std::to_string(dim) + " columns");
}

WeightOperator weights_for(const std::string& dense_path, const std::string& index_path, Index dim,
                           const char* which) {
  if (!dense_path.empty()) return read_weights(dense_path, dim, which);
  if (!index_path.empty()) return WeightOperator::selection(io::read_index_json_file(index_path), dim);
  return WeightOperator::identity(dim);
}

Covariance read_covariance(const std::string& path, Index dim, const char* which) {
  const Matrix m = read_input(path);
  if ((m.cols() == 1 || m.rows() == 1) && m.size() == dim) {
    return Covariance::diagonal(Eigen::Map<const Vector>(m.data(), dim));
  }
  if (m.rows() == dim && m.cols() == dim) return Covariance::dense(m);
  throw InvalidArgument(std::string(which) + " covariance in '" + path + "' does not match dimension " +
                        std::to_string(dim));
}

std::uint64_t env_seed() {
  const char* s = std::getenv("SPECTRAL_DENOISE_SEED");
  if (s == nullptr || *s == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || *s == '-') {
    throw InvalidArgument(std::string("SPECTRAL_DENOISE_SEED is not a nonnegative integer: '") + s + "'");
  }
  return v;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

void add_common(CLI::App& app, CommonOptions& c, bool needs_input) {
  auto* in = app.add_option("--input", c.input, "Input matrix (dense CSV)");
  if (needs_input) in->required();
  app.add_option("--output", c.output, "Output matrix (dense CSV)")->required();
  app.add_option("--report", c.report, "JSON report path");
  app.add_option("--rank", c.rank, "Force the number of components");
  app.add_option("--margin", c.margin, "Detection margin above the bulk edge");
}

int run_denoise(const CommonOptions& c, const WeightOptions& w, bool diagonal) {
  const Matrix Y = read_input(c.input);
  const WeightOperator omega = weights_for(w.row_weights, w.row_indices, Y.rows(), "row");
  const WeightOperator pi = weights_for(w.col_weights, w.col_indices, Y.cols(), "column");
  const DenoiseOptions opts = denoise_options(c);
  const DenoiseResult r = diagonal ? diagonal_denoise(Y, omega, pi, opts) : spectral_denoise(Y, omega, pi, opts);
  json cfg = common_config(c);
  cfg["row_weights"] = w.row_weights.empty() ? json(nullptr) : json(w.row_weights);
  cfg["col_weights"] = w.col_weights.empty() ? json(nullptr) : json(w.col_weights);
  cfg["row_weight_indices"] = w.row_indices.empty() ? json(nullptr) : json(w.row_indices);
  cfg["col_weight_indices"] = w.col_indices.empty() ? json(nullptr) : json(w.col_indices);
  cfg["diagonal"] = diagonal;
  json res = result_json(r);
  res["dims"] = {Y.rows(), Y.cols()};
  write_outputs(c, "denoise", r.X_hat, std::move(cfg), std::move(res));
  return ExitCode::ok;
}

int run_shrink(const CommonOptions& c) {
  const Matrix Y = read_input(c.input);
  const DenoiseResult r = svs_shrink(Y, denoise_options(c));
  json res = result_json(r);
  res["dims"] = {Y.rows(), Y.cols()};
  write_outputs(c, "shrink", r.X_hat, common_config(c), std::move(res));
  return ExitCode::ok;
}

int run_localized(const CommonOptions& c, const LocalizedOptions& l) {
  const Matrix Y = read_input(c.input);
  auto partition = [](const std::optional<long>& blocks, const std::string& file, Index dim) {
    if (!file.empty()) return io::read_partition_json_file(file, dim);
    if (blocks) return make_equispaced_partition(dim, static_cast<Index>(*blocks));
    return Partition::single(dim);
  };
  const Partition rows = partition(l.row_blocks, l.row_partition, Y.rows());
  const Partition cols = partition(l.col_blocks, l.col_partition, Y.cols());
  const LocalizedResult r = localized_denoise(Y, rows, cols, denoise_options(c));
  json cfg = common_config(c);
  cfg["row_partition"] = json::parse(io::partition_to_json(rows));
  cfg["col_partition"] = json::parse(io::partition_to_json(cols));
  json res = spikes_json(r.spikes);
  res["dims"] = {Y.rows(), Y.cols()};
  res["rank_zero"] = r.rank_zero;
  res["amse_estimate"] = r.amse_estimate;
  json blocks = json::array();
  for (const BlockEstimate& b : r.blocks) {
    blocks.push_back({{"row_block", b.row_block},
                      {"col_block", b.col_block},
                      {"amse_estimate", b.amse_estimate},
                      {"amse_clamped", b.amse_clamped},
                      {"clipped_components", to_json(b.clipped_components)}});
  }
  res["blocks"] = blocks;
  write_outputs(c, "localized", r.X_hat, std::move(cfg), std::move(res));
  return ExitCode::ok;
}

int run_submatrix(const CommonOptions& c, const SubmatrixOptions& s) {
  const Matrix Y = read_input(c.input);
  const std::vector<Index> rows = io::read_index_json_file(s.rows);
  const std::vector<Index> cols = io::read_index_json_file(s.cols);
  const DenoiseOptions opts = denoise_options(c);
  const PipelineResult r =
      s.baseline ? shrink_submatrix_baseline(Y, rows, cols, opts) : submatrix_denoise(Y, rows, cols, opts);
  json cfg = common_config(c);
  cfg["rows"] = s.rows;
  cfg["cols"] = s.cols;
  cfg["baseline"] = s.baseline;
  json res = result_json(r.inner);
  res["dims"] = {Y.rows(), Y.cols()};
  res["submatrix_dims"] = {r.estimate.rows(), r.estimate.cols()};
  write_outputs(c, "submatrix", r.estimate, std::move(cfg), std::move(res));
  return ExitCode::ok;
}

int run_whiten(const CommonOptions& c, const WhitenOptions& w) {
  const Matrix Y = read_input(c.input);
  NoiseCovariances cov{Covariance::identity(Y.rows()), Covariance::identity(Y.cols())};
  if (w.estimate) {
    cov = estimate_noise_covariances(Y);
  } else if (!w.cov_s.empty()) {
    cov = NoiseCovariances{read_covariance(w.cov_s, Y.rows(), "row"), read_covariance(w.cov_t, Y.cols(), "column")};
  } else {
    throw InvalidArgument("whiten needs --cov-s and --cov-t, or --estimate-cov");
  }
  const PipelineResult r = whiten_denoise(Y, cov, denoise_options(c));
  json cfg = common_config(c);
  cfg["cov_s"] = w.cov_s.empty() ? json(nullptr) : json(w.cov_s);
  cfg["cov_t"] = w.cov_t.empty() ? json(nullptr) : json(w.cov_t);
  cfg["estimate_cov"] = w.estimate;
  json res = result_json(r.inner);
  res["dims"] = {Y.rows(), Y.cols()};
  res["tau"] = snr_gain_tau(cov);
  write_outputs(c, "whiten", r.estimate, std::move(cfg), std::move(res));
  return ExitCode::ok;
}

int run_complete(const CommonOptions& c, const CompleteOptions& o) {
  SamplingPattern pat;
  pat.observed = io::read_coordinate_csv_file(c.input);
  if (o.estimate_q) {
    if (!o.dim_rows || !o.dim_cols) throw InvalidArgument("--estimate-probabilities needs --rows and --cols");
    pat.rows = static_cast<Index>(*o.dim_rows);
    pat.cols = static_cast<Index>(*o.dim_cols);
    std::tie(pat.q_row, pat.q_col) = estimate_sampling_probabilities(pat);
  } else {
    if (o.q_row.empty()) throw InvalidArgument("complete needs --q-row and --q-col, or --estimate-probabilities");
    pat.q_row = io::read_vector_file(o.q_row);
    pat.q_col = io::read_vector_file(o.q_col);
    pat.rows = o.dim_rows ? static_cast<Index>(*o.dim_rows) : pat.q_row.size();
    pat.cols = o.dim_cols ? static_cast<Index>(*o.dim_cols) : pat.q_col.size();
  }
  const PipelineResult r = missing_data_denoise(pat, o.noise_sd, denoise_options(c));
  json cfg = common_config(c);
  cfg["q_row"] = o.q_row.empty() ? json(nullptr) : json(o.q_row);
  cfg["q_col"] = o.q_col.empty() ? json(nullptr) : json(o.q_col);
  cfg["estimate_probabilities"] = o.estimate_q;
  cfg["noise_sd"] = o.noise_sd;
  json res = result_json(r.inner);
  res["dims"] = {pat.rows, pat.cols};
  res["observed"] = pat.observed.size();
  write_outputs(c, "complete", r.estimate, std::move(cfg), std::move(res));
  return ExitCode::ok;
}

int run_simulate(const SimulateOptions& s) {
  simlab::ExperimentConfig cfg;
  bool seed_from_config = false;
  if (!s.config.empty()) {
    const json j = read_json_file(s.config);
    cfg = simlab::parse_config(j);
    seed_from_config = j.contains("seed");
  }
  if (!s.scenario.empty()) cfg.scenario = s.scenario;
  if (cfg.scenario.empty()) throw InvalidArgument("simulate needs --scenario or --config");
  if (s.seed) {
    cfg.seed = *s.seed;
  } else if (!seed_from_config) {
    cfg.seed = env_seed();
  }
  if (s.scale) cfg.scale = *s.scale;
  if (s.jobs) cfg.jobs = *s.jobs;
  if (s.replicates) cfg.replicates = *s.replicates;

  const simlab::ExperimentReport rep = simlab::run_experiment(cfg);
  if (!s.output_dir.empty()) simlab::write_report_files(rep, s.output_dir);
  if (!s.report.empty()) {
    json j = simlab::report_to_json(rep);
    j["schema"] = 1;
    j["command"] = "simulate";
    std::ofstream out(s.report);
    if (!out) throw IoError("cannot write report '" + s.report + "'");
    out << j.dump(2) << '\n';
  }
  std::cout << "scenario " << cfg.scenario << ", " << rep.replicates << " replicates, seed " << cfg.seed << '\n';
  for (const auto& a : rep.aggregates) {
    std::cout << std::left << std::setw(24) << a.point << std::setw(24) << a.metric << std::right
              << std::setw(14) << std::setprecision(6) << a.summary.mean << " +- " << std::setprecision(3)
              << a.summary.stderr_mean() << '\n';
  }
  return ExitCode::ok;
}

int guarded(const std::string& command, const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const BelowThreshold& e) {
    std::cerr << command << ": below detection threshold (component " << e.index() << "): " << e.what() << '\n';
    return ExitCode::below_threshold;
  } catch (const Error& e) {
    std::cerr << command << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::io:
        return ExitCode::io_failure;
      case ErrorKind::invalid_argument:
        return ExitCode::invalid_input;
      case ErrorKind::below_threshold:
        return ExitCode::below_threshold;
      default:
        return ExitCode::numerical;
    }
  } catch (const std::exception& e) {
    std::cerr << command << ": unexpected error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sdn::cli
