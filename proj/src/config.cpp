#include "eqsamp/harness.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace eqsamp {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: expected a boolean, got '" + v + "'");
}

Scheme parse_scheme(const std::string& v) {
  if (v == "FES" || v == "fes") return Scheme::Fes;
  if (v == "RANDOM" || v == "random") return Scheme::Random;
  if (v == "EES" || v == "ees") return Scheme::Ees;
  throw std::invalid_argument("config: unknown scheme '" + v + "'");
}

}  // namespace

void apply_config_line(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "n") config.n = std::stoi(value);
  else if (key == "center_frequency") config.center_frequency = std::stod(value);
  else if (key == "sample_rate") config.sample_rate = std::stod(value);
  else if (key == "band_lo") config.band_lo = std::stoi(value);
  else if (key == "band_hi") config.band_hi = std::stoi(value);
  else if (key == "dof_list") {
    config.dof_list.clear();
    for (const auto& s : split_list(value)) config.dof_list.push_back(std::stoi(s));
  } else if (key == "sample_counts") {
    config.sample_counts.clear();
    for (const auto& s : split_list(value)) config.sample_counts.push_back(std::stoi(s));
  } else if (key == "trials") config.trials = std::stoi(value);
  else if (key == "base_seed") config.base_seed = std::stoull(value);
  else if (key == "schemes") {
    config.schemes.clear();
    for (const auto& s : split_list(value)) config.schemes.push_back(parse_scheme(s));
  } else if (key == "amplitude_lo") config.amplitude_lo = std::stod(value);
  else if (key == "amplitude_hi") config.amplitude_hi = std::stod(value);
  else if (key == "guard") config.guard = std::stoi(value);
  else if (key == "feasibility_tolerance") config.feasibility_tolerance = std::stod(value);
  else if (key == "max_iterations") config.max_iterations = std::stoi(value);
  else if (key == "shrink_scale") config.shrink_scale = std::stod(value);
  else if (key == "ees_prior") {
    if (value == "template") config.ees_prior = EesPrior::Template;
    else if (value == "scene") config.ees_prior = EesPrior::Scene;
    else throw std::invalid_argument("config: ees_prior must be 'template' or 'scene'");
  } else if (key == "midpoint") {
    if (value == "energy") config.midpoint = MidpointRule::Energy;
    else if (value == "geometric") config.midpoint = MidpointRule::Geometric;
    else throw std::invalid_argument("config: midpoint must be 'energy' or 'geometric'");
  } else if (key == "out_dir") config.out_dir = value;
  else if (key == "jobs") config.jobs = std::stoi(value);
  else if (key == "plot_trials") config.plot_trials = parse_bool(value);
  else if (key == "timings") config.timings = parse_bool(value);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open '" + path + "'");

  ExperimentConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: line " + std::to_string(lineno) + " is not 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_line(config, key, value);
    } catch (const std::exception& e) {
      throw std::runtime_error("config: line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return config;
}

}  // namespace eqsamp
