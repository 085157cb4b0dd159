#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sdn/simlab/experiment.hpp"

namespace sdn::simlab::detail {

struct Point {
  std::string label;
  nlohmann::json values;
};

class Scenario {
 public:
  virtual ~Scenario() = default;
  virtual std::string name() const = 0;
  virtual nlohmann::json defaults() const = 0;
  virtual void validate(const nlohmann::json& params) const = 0;
  virtual nlohmann::json scaled(nlohmann::json params, double scale) const = 0;
  virtual std::vector<Point> points(const nlohmann::json& params) const = 0;
  virtual Metrics run(const nlohmann::json& params, const Point& point, std::uint64_t seed) const = 0;
};

const std::vector<std::unique_ptr<Scenario>>& registry();
const Scenario& find_scenario(const std::string& name);

}  // namespace sdn::simlab::detail
