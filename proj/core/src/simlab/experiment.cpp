#include "sdn/simlab/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "scenarios.hpp"
#include "sdn/errors.hpp"
#include "sdn/io.hpp"
#include "sdn/simlab/rng.hpp"
#include "sdn/version.hpp"

namespace sdn::simlab {

using nlohmann::json;

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw InvalidArgument("experiment config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "schema" && key != "scenario" && key != "replicates" && key != "seed" && key != "scale" &&
        key != "jobs" && key != "params") {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
  }
  if (!j.contains("schema") || j.at("schema") != 1) throw InvalidArgument("config must declare \"schema\": 1");
  ExperimentConfig cfg;
  if (!j.contains("scenario") || !j.at("scenario").is_string()) throw InvalidArgument("config needs a scenario name");
  cfg.scenario = j.at("scenario").get<std::string>();
  if (j.contains("replicates")) {
    if (!j.at("replicates").is_number_unsigned() || j.at("replicates").get<std::size_t>() == 0) {
      throw InvalidArgument("replicates must be a positive integer");
    }
    cfg.replicates = j.at("replicates").get<std::size_t>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw InvalidArgument("seed must be a nonnegative integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("scale")) {
    if (!j.at("scale").is_number() || !(j.at("scale").get<double>() > 0.0)) {
      throw InvalidArgument("scale must be a positive number");
    }
    cfg.scale = j.at("scale").get<double>();
  }
  if (j.contains("jobs")) {
    if (!j.at("jobs").is_number_unsigned() || j.at("jobs").get<unsigned>() == 0) {
      throw InvalidArgument("jobs must be a positive integer");
    }
    cfg.jobs = j.at("jobs").get<unsigned>();
  }
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw InvalidArgument("params must be an object");
    cfg.params = j.at("params");
  }
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return json{{"schema", 1},          {"scenario", cfg.scenario}, {"replicates", cfg.replicates},
              {"seed", cfg.seed},     {"scale", cfg.scale},       {"jobs", cfg.jobs},
              {"params", cfg.params}};
}

const Aggregate& ExperimentReport::aggregate(const std::string& point, const std::string& metric) const {
  for (const auto& a : aggregates) {
    if (a.point == point && a.metric == metric) return a;
  }
  throw InvalidArgument("no aggregate for point '" + point + "' and metric '" + metric + "'");
}

std::vector<double> ExperimentReport::values(const std::string& point, const std::string& metric) const {
  std::vector<double> out;
  for (const auto& row : rows) {
    if (row.point != point) continue;
    for (const auto& [name, v] : row.metrics) {
      if (name == metric) out.push_back(v);
    }
  }
  return out;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& s : detail::registry()) out.push_back(s->name());
  return out;
}

json resolve_params(const std::string& scenario, const json& overrides) {
  const auto& sc = detail::find_scenario(scenario);
  json params = sc.defaults();
  if (!overrides.is_null()) {
    if (!overrides.is_object()) throw InvalidArgument("params must be an object");
    for (const auto& [key, value] : overrides.items()) {
      if (!params.contains(key)) throw InvalidArgument("scenario '" + scenario + "' has no parameter '" + key + "'");
      params[key] = value;
    }
  }
  sc.validate(params);
  return params;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto& sc = detail::find_scenario(cfg.scenario);
  if (!(cfg.scale > 0.0)) throw InvalidArgument("scale must be positive");
  if (cfg.replicates == 0) throw InvalidArgument("replicates must be positive");

  ExperimentReport rep;
  rep.config = cfg;
  json params = resolve_params(cfg.scenario, cfg.params);
  if (cfg.scale != 1.0) {
    params = sc.scaled(std::move(params), cfg.scale);
    sc.validate(params);
  }
  rep.resolved_params = params;
  rep.replicates = cfg.replicates;
  if (cfg.scale != 1.0 && cfg.replicates > 1) {
    rep.replicates = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::llround(static_cast<double>(cfg.replicates) * cfg.scale)));
  }

  for (std::size_t r = 0; r < rep.replicates; ++r) rep.seeds.push_back(derive_seed(cfg.seed, r));
  const std::vector<detail::Point> points = sc.points(params);
  for (const auto& pt : points) rep.points.push_back(pt.label);

  const std::size_t total = points.size() * rep.replicates;
  rep.rows.resize(total);
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t pi = task / rep.replicates;
      const std::size_t r = task % rep.replicates;
      try {
        ReplicateRow row;
        row.replicate_id = r;
        row.seed = rep.seeds[r];
        row.point = points[pi].label;
        row.metrics = sc.run(params, points[pi], row.seed);
        rep.rows[task] = std::move(row);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(total);
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(1, total))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  // deterministic fold: points in order, metrics in first-seen order, replicates in index order
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    std::vector<std::string> names;
    for (std::size_t r = 0; r < rep.replicates; ++r) {
      for (const auto& [name, _] : rep.rows[pi * rep.replicates + r].metrics) {
        if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
      }
    }
    for (const auto& name : names) {
      Aggregate a;
      a.point = points[pi].label;
      a.metric = name;
      const auto vals = rep.values(a.point, name);
      a.summary = summarize(vals);
      rep.aggregates.push_back(std::move(a));
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ExperimentReport rank_estimation_study(ExperimentConfig cfg) {
  cfg.scenario = "rank-estimation";
  return run_experiment(cfg);
}

namespace {

json number_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

json report_to_json(const ExperimentReport& rep, bool include_timing) {
  json j;
  j["version"] = version_string;
  j["config"] = config_to_json(rep.config);
  j["resolved_params"] = rep.resolved_params;
  j["replicates"] = rep.replicates;
  j["seed_derivation"] = "splitmix64(seed + 0x9E3779B97F4A7C15 * (replicate_id + 1))";
  j["seeds"] = rep.seeds;
  j["points"] = rep.points;
  json aggs = json::array();
  for (const auto& a : rep.aggregates) {
    aggs.push_back({{"point", a.point},
                    {"metric", a.metric},
                    {"count", a.summary.count},
                    {"mean", number_or_null(a.summary.mean)},
                    {"std", number_or_null(a.summary.std)},
                    {"min", number_or_null(a.summary.min)},
                    {"max", number_or_null(a.summary.max)}});
  }
  j["aggregates"] = aggs;
  if (include_timing) j["wall_seconds"] = rep.wall_seconds;
  return j;
}

void write_replicates_csv(std::ostream& out, const ExperimentReport& rep) {
  std::vector<std::string> names;
  for (const auto& row : rep.rows) {
    for (const auto& [name, _] : row.metrics) {
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    }
  }
  out << "replicate_id,seed,point";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (const auto& row : rep.rows) {
    out << row.replicate_id << ',' << row.seed << ',' << row.point;
    for (const auto& n : names) {
      out << ',';
      for (const auto& [name, v] : row.metrics) {
        if (name == n) {
          out << io::format_double(v);
          break;
        }
      }
    }
    out << '\n';
  }
}

void write_report_files(const ExperimentReport& rep, const std::string& directory) {
  std::filesystem::create_directories(directory);
  const auto base = std::filesystem::path(directory);
  {
    std::ofstream out(base / "report.json");
    if (!out) throw IoError("cannot write report.json in '" + directory + "'");
    out << report_to_json(rep).dump(2) << '\n';
  }
  {
    std::ofstream out(base / "replicates.csv");
    if (!out) throw IoError("cannot write replicates.csv in '" + directory + "'");
    write_replicates_csv(out, rep);
  }
}

}  // namespace sdn::simlab
