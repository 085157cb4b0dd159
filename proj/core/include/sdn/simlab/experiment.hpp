#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdn/simlab/metrics.hpp"

namespace sdn::simlab {

using Metrics = std::vector<std::pair<std::string, double>>;

struct ExperimentConfig {
  std::string scenario;
  std::size_t replicates = 20;
  std::uint64_t seed = 0;
  double scale = 1.0;  // shrinks dimensions and replicates, aspect ratios fixed
  unsigned jobs = 1;
  nlohmann::json params = nlohmann::json::object();
};

// {"schema": 1, "scenario": ..., "replicates": ..., "seed": ..., "scale": ..., "params": {...}}
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

struct ReplicateRow {
  std::size_t replicate_id = 0;
  std::uint64_t seed = 0;
  std::string point;
  Metrics metrics;
};

struct Aggregate {
  std::string point;
  std::string metric;
  Summary summary;
};

struct ExperimentReport {
  ExperimentConfig config;
  nlohmann::json resolved_params;
  std::size_t replicates = 0;  // after scaling
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> points;
  std::vector<ReplicateRow> rows;  // point-major, then replicate order
  std::vector<Aggregate> aggregates;
  double wall_seconds = 0.0;

  const Aggregate& aggregate(const std::string& point, const std::string& metric) const;
  // Per-replicate values of one metric at one point, in replicate order.
  std::vector<double> values(const std::string& point, const std::string& metric) const;
};

std::vector<std::string> scenario_names();
// Defaults merged with overrides, validated, before scaling.
nlohmann::json resolve_params(const std::string& scenario, const nlohmann::json& overrides);

ExperimentReport run_experiment(const ExperimentConfig& cfg);
ExperimentReport rank_estimation_study(ExperimentConfig cfg);

nlohmann::json report_to_json(const ExperimentReport& rep, bool include_timing = true);
void write_replicates_csv(std::ostream& out, const ExperimentReport& rep);
void write_report_files(const ExperimentReport& rep, const std::string& directory);

}  // namespace sdn::simlab
