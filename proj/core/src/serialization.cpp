#include "netfail/serialization.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace netfail {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json incidence_to_json(const IncidenceMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) {
    throw ConfigError(std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

Vector vector_from_json(const json& j, const char* key, Eigen::Index d) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d) {
    throw ConfigError(std::string("\"") + key + "\" must be an array of " +
                      std::to_string(d) + " numbers");
  }
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = j.at(i).get<double>();
  return v;
}

template <typename MatrixType>
MatrixType matrix_from_json(const json& j, const char* key, Eigen::Index d) {
  using Scalar = typename MatrixType::Scalar;
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d) {
    throw ConfigError(std::string("\"") + key + "\" must have " +
                      std::to_string(d) + " rows");
  }
  MatrixType m(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const json& row = j.at(i);
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
      throw ConfigError(std::string("\"") + key + "\" row " +
                        std::to_string(i + 1) + " must have " +
                        std::to_string(d) + " entries");
    }
    for (Eigen::Index k = 0; k < d; ++k) m(i, k) = row.at(k).get<Scalar>();
  }
  return m;
}

json network_json(const NetworkSpec& spec) {
  json j;
  j["d"] = spec.dimension();
  j["H"] = incidence_to_json(spec.incidence);
  j["A"] = matrix_to_json(spec.routing);
  j["gamma"] = vector_to_json(spec.supply_shape);
  j["mu"] = vector_to_json(spec.demand_mean);
  j["sigma"] = matrix_to_json(spec.demand_cov);
  j["beta"] = spec.supply_exponent;
  return j;
}

NetworkSpec network_from(const json& j) {
  if (!j.is_object()) throw ConfigError("network must be a JSON object");
  const int d = require(j, "d").get<int>();
  if (d < 2) throw ConfigError("\"d\" must be at least 2");
  NetworkSpec spec;
  spec.incidence = matrix_from_json<IncidenceMatrix>(require(j, "H"), "H", d);
  if (j.contains("A") && !j.at("A").is_null()) {
    spec.routing = matrix_from_json<Matrix>(j.at("A"), "A", d);
  } else {
    try {
      spec.routing = default_routing(spec.incidence);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("cannot derive routing: ") + e.what());
    }
  }
  spec.supply_shape = vector_from_json(require(j, "gamma"), "gamma", d);
  spec.demand_mean = vector_from_json(require(j, "mu"), "mu", d);
  spec.demand_cov = matrix_from_json<Matrix>(require(j, "sigma"), "sigma", d);
  spec.supply_exponent = require(j, "beta").get<double>();
  return spec;
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
}

double parse_number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string network_to_json(const NetworkSpec& spec) {
  return network_json(spec).dump(2);
}

NetworkSpec network_from_json(std::string_view text) {
  try {
    return network_from(parse(text));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad network field: ") + e.what());
  }
}

std::string experiment_to_json(const ExperimentConfig& config) {
  json j;
  j["name"] = config.name;
  j["network"] = network_json(config.network);
  j["n"] = config.n_values;
  j["threshold"] = {{"coefficient", config.threshold.coefficient},
                    {"exponent", config.threshold.exponent}};
  json methods = json::array();
  for (Method m : config.methods) methods.push_back(std::string(method_name(m)));
  j["methods"] = methods;
  j["replications"] = config.replications;
  j["seed"] = config.seed;
  j["confidence"] = config.confidence;
  j["threads"] = config.threads;
  j["format"] = config.format == OutputFormat::Csv ? "csv" : "table";
  j["output"] = config.output_path;
  j["timing"] = config.timing;
  return j.dump(2);
}

ExperimentConfig experiment_from_json(std::string_view text,
                                      const std::string& base_dir) {
  const json j = parse(text);
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  try {
    ExperimentConfig config;
    if (j.contains("preset")) config = preset(j.at("preset").get<std::string>());
    config.name = j.value("name", config.name);
    if (j.contains("network")) {
      config.network = network_from(j.at("network"));
    } else if (j.contains("network_file")) {
      std::filesystem::path path = j.at("network_file").get<std::string>();
      if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
      config.network = network_from(parse(read_text_file(path.string())));
    } else if (!j.contains("preset")) {
      throw ConfigError("config needs \"network\", \"network_file\" or \"preset\"");
    }
    if (j.contains("n")) config.n_values = j.at("n").get<std::vector<double>>();
    if (j.contains("k")) {
      config.threshold = ThresholdRule::constant(j.at("k").get<double>());
    }
    if (j.contains("threshold")) {
      const json& t = j.at("threshold");
      if (t.is_string()) {
        config.threshold = parse_threshold_rule(t.get<std::string>());
      } else {
        config.threshold = {require(t, "coefficient").get<double>(),
                            t.value("exponent", 0.0)};
      }
    }
    if (j.contains("methods")) {
      config.methods.clear();
      for (const auto& m : j.at("methods")) {
        const auto name = m.get<std::string>();
        const auto method = parse_method(name);
        if (!method) {
          throw ConfigError("unknown method '" + name +
                            "' (valid: naive, is, cmc)");
        }
        config.methods.push_back(*method);
      }
    }
    config.replications = j.value("replications", config.replications);
    config.seed = j.value("seed", config.seed);
    config.confidence = j.value("confidence", config.confidence);
    config.threads = j.value("threads", config.threads);
    if (j.contains("format")) {
      const auto f = j.at("format").get<std::string>();
      if (f == "csv") {
        config.format = OutputFormat::Csv;
      } else if (f == "table") {
        config.format = OutputFormat::Table;
      } else {
        throw ConfigError("format must be \"table\" or \"csv\"");
      }
    }
    config.output_path = j.value("output", config.output_path);
    config.timing = j.value("timing", config.timing);
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

ThresholdRule parse_threshold_rule(std::string_view text) {
  const std::string s(text);
  if (const auto comma = s.find(','); comma != std::string::npos) {
    return {parse_number(std::string_view(s).substr(0, comma)),
            parse_number(std::string_view(s).substr(comma + 1))};
  }
  const auto star = s.find('*');
  if (star == std::string::npos) {
    return ThresholdRule::constant(parse_number(s));
  }
  const double c = parse_number(std::string_view(s).substr(0, star));
  std::string rest = s.substr(star + 1);
  auto trim = [](std::string& x) {
    while (!x.empty() && std::isspace(static_cast<unsigned char>(x.front()))) {
      x.erase(x.begin());
    }
  };
  trim(rest);
  if (rest.empty() || rest.front() != 'n') {
    throw ConfigError("threshold rule must look like 'c*n^p': '" + s + "'");
  }
  rest.erase(0, 1);
  if (rest.rfind("**", 0) == 0) {
    rest.erase(0, 2);
  } else if (!rest.empty() && rest.front() == '^') {
    rest.erase(0, 1);
  } else if (rest.empty()) {
    return {c, 1.0};
  } else {
    throw ConfigError("threshold rule must look like 'c*n^p': '" + s + "'");
  }
  return {c, parse_number(rest)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace netfail
