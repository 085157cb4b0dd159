#pragma once

#include <functional>
#include <optional>
#include <string>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

namespace sdn::cli {

enum ExitCode : int {
  ok = 0,
  usage = 2,
  io_failure = 3,
  invalid_input = 4,
  below_threshold = 5,
  numerical = 6,
};

struct CommonOptions {
  std::string input;
  std::string output;
  std::string report;
  std::optional<long> rank;
  double margin = 0.0;
};

struct WeightOptions {
  std::string row_weights;
  std::string col_weights;
  std::string row_indices;
  std::string col_indices;
};

struct LocalizedOptions {
  std::optional<long> row_blocks;
  std::optional<long> col_blocks;
  std::string row_partition;
  std::string col_partition;
};

struct SubmatrixOptions {
  std::string rows;
  std::string cols;
  bool baseline = false;
};

struct WhitenOptions {
  std::string cov_s;
  std::string cov_t;
  bool estimate = false;
};

struct CompleteOptions {
  std::string q_row;
  std::string q_col;
  bool estimate_q = false;
  std::optional<long> dim_rows;
  std::optional<long> dim_cols;
  double noise_sd = 1.0;
};

struct SimulateOptions {
  std::string scenario;
  std::string config;
  std::optional<double> scale;
  std::optional<unsigned long long> seed;
  std::optional<unsigned> jobs;
  std::optional<unsigned long> replicates;
  std::string output_dir;
  std::string report;
};

void add_common(CLI::App& app, CommonOptions& c, bool needs_input = true);

int run_denoise(const CommonOptions& c, const WeightOptions& w, bool diagonal);
int run_shrink(const CommonOptions& c);
int run_localized(const CommonOptions& c, const LocalizedOptions& l);
int run_submatrix(const CommonOptions& c, const SubmatrixOptions& s);
int run_whiten(const CommonOptions& c, const WhitenOptions& w);
int run_complete(const CommonOptions& c, const CompleteOptions& o);
int run_simulate(const SimulateOptions& s);

// Runs fn and maps library errors to exit codes with a diagnostic on stderr.
int guarded(const std::string& command, const std::function<int()>& fn);

}  // namespace sdn::cli
