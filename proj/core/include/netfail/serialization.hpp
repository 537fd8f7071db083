#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "netfail/experiment.hpp"
#include "netfail/network.hpp"

namespace netfail {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// NetworkSpec as JSON:
//   {"d": 3, "H": [[0,1,0],...], "A": [[...]] (optional),
//    "gamma": [...], "mu": [...], "sigma": [[...]], "beta": 1.0}
// A missing "A" means default_routing(H).
std::string network_to_json(const NetworkSpec& spec);
NetworkSpec network_from_json(std::string_view text);

// ExperimentConfig as JSON; see README for the schema. `base_dir` resolves
// a relative "network_file".
std::string experiment_to_json(const ExperimentConfig& config);
ExperimentConfig experiment_from_json(std::string_view text,
                                      const std::string& base_dir = ".");

// "2", "20*n^0.5", "20*n**0.5" or "c,p".
ThresholdRule parse_threshold_rule(std::string_view text);

std::string read_text_file(const std::string& path);

}  // namespace netfail
