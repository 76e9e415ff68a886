// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "risim/errors.hpp"
#include "risim/units.hpp"

namespace risim {

namespace {

using Json = nlohmann::ordered_json;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(const std::string& path, std::string_view value) {
  try {
    std::size_t used = 0;
    const std::string text(value);
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: " + path + ": expected a number, got '" + std::string(value) + "'");
  }
}

std::uint64_t parse_count(const std::string& path, std::string_view value) {
  std::uint64_t v = 0;
  const auto* begin = value.data();
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config: " + path + ": expected a non-negative integer, got '" +
                      std::string(value) + "'");
  }
  return v;
}

bool parse_bool(const std::string& path, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: " + path + ": expected true/false, got '" + std::string(value) + "'");
}

std::vector<double> parse_double_list(const std::string& path, std::string_view value) {
  std::vector<double> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string_view::npos) comma = value.size();
    const std::string_view piece = trim(value.substr(start, comma - start));
    if (!piece.empty()) items.push_back(parse_double(path, piece));
    start = comma + 1;
  }
  if (items.empty()) throw ConfigError("config: " + path + ": expected a non-empty list");
  return items;
}

using Setter = std::function<void(SystemConfig&, const std::string&, std::string_view)>;

const std::map<std::string, std::map<std::string, Setter>>& key_table() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"topology",
       {
           {"bs_antennas", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.topology.num_bs_antennas = parse_count(p, v);
            }},
           {"num_ris", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.topology.num_ris = parse_count(p, v);
              c.topology.ue_slots_per_ris.assign(c.topology.num_ris,
                                                 c.topology.ue_slots_per_ris.empty()
                                                     ? 2
                                                     : c.topology.ue_slots_per_ris.front());
            }},
           {"elements_x", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.topology.ris_elements_x = parse_count(p, v);
            }},
           {"elements_y", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.topology.ris_elements_y = parse_count(p, v);
            }},
           {"max_ue_per_ris", [](SystemConfig& c, const std::string& p, std::string_view v) {
              const std::size_t slots = parse_count(p, v);
              c.topology.ue_slots_per_ris.assign(c.topology.num_ris, slots);
            }},
           {"bs_ris_distance_m", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.topology.bs_ris_distance_m = parse_double(p, v);
            }},
           {"ris_ue_distance_m", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.topology.ris_ue_distance_m = parse_double(p, v);
            }},
       }},
      {"channel",
       {
           {"direct_clusters", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.direct.num_clusters = parse_count(p, v);
            }},
           {"direct_paths", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.direct.paths_per_cluster = parse_count(p, v);
            }},
           {"direct_los", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.direct.include_los = parse_bool(p, v);
            }},
           {"ris_clusters", [](SystemConfig& c, const std::string& p, std::string_view v) {
              const std::size_t n = parse_count(p, v);
              c.channel.bs_ris.num_clusters = n;
              c.channel.ris_ue.num_clusters = n;
            }},
           {"ris_paths", [](SystemConfig& c, const std::string& p, std::string_view v) {
              const std::size_t n = parse_count(p, v);
              c.channel.bs_ris.paths_per_cluster = n;
              c.channel.ris_ue.paths_per_cluster = n;
            }},
           {"ris_los", [](SystemConfig& c, const std::string& p, std::string_view v) {
              const bool los = parse_bool(p, v);
              c.channel.bs_ris.include_los = los;
              c.channel.ris_ue.include_los = los;
            }},
           {"angle_spread_deg", [](SystemConfig& c, const std::string& p, std::string_view v) {
              const double spread = deg_to_rad(parse_double(p, v));
              c.channel.direct.angle_spread_rad = spread;
              c.channel.bs_ris.angle_spread_rad = spread;
              c.channel.ris_ue.angle_spread_rad = spread;
            }},
           {"reference_loss_db", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.path_loss.reference_loss_db = parse_double(p, v);
            }},
           {"pathloss_exponent_los", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.path_loss.exponent_los = parse_double(p, v);
            }},
           {"pathloss_exponent_nlos",
            [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.path_loss.exponent_nlos = parse_double(p, v);
            }},
           {"carrier_ghz", [](SystemConfig& c, const std::string& p, std::string_view v) {
              const double ghz = parse_double(p, v);
              if (!(ghz > 0.0)) throw ConfigError("config: " + p + ": must be positive");
              const double spacing_ratio = c.channel.path_loss.spacing_ratio();
              c.channel.path_loss.carrier_wavelength_m = kSpeedOfLight / (ghz * 1e9);
              c.channel.path_loss.antenna_spacing_m =
                  spacing_ratio * c.channel.path_loss.carrier_wavelength_m;
            }},
           {"antenna_spacing_over_wavelength",
            [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.path_loss.antenna_spacing_m =
                  parse_double(p, v) * c.channel.path_loss.carrier_wavelength_m;
            }},
           {"ris_gain_db", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.channel.path_loss.ris_gain = db_to_linear(parse_double(p, v));
            }},
           {"noise_dbm", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.noise.power_w = dbm_to_watts(parse_double(p, v));
            }},
       }},
      {"reflection",
       {
           {"mode", [](SystemConfig& c, const std::string& p, std::string_view v) {
              if (v == "ideal") {
                c.reflection.mode = ReflectionMode::ideal;
              } else if (v == "practical") {
                c.reflection.mode = ReflectionMode::practical;
              } else {
                throw ConfigError("config: " + p + ": expected ideal|practical");
              }
            }},
           {"steepness", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.reflection.steepness = parse_double(p, v);
            }},
           {"beta_min", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.reflection.beta_min = parse_double(p, v);
            }},
           {"phase_offset_rad", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.reflection.phase_offset = parse_double(p, v);
            }},
           {"theta_min_rad", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.reflection.theta_min = parse_double(p, v);
            }},
           {"theta_max_rad", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.reflection.theta_max = parse_double(p, v);
            }},
       }},
      {"rl",
       {
           {"episodes", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.episodes = parse_count(p, v);
            }},
           {"steps_per_episode", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.steps_per_episode = parse_count(p, v);
            }},
           {"discount", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.discount = parse_double(p, v);
            }},
           {"soft_update_tau", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.soft_update_tau = parse_double(p, v);
            }},
           {"minibatch", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.minibatch = parse_count(p, v);
            }},
           {"learning_rate", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.learning_rate = parse_double(p, v);
            }},
           {"buffer_capacity", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.buffer_capacity = parse_count(p, v);
            }},
           {"exploration_noise_std",
            [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.exploration_noise_std = parse_double(p, v);
            }},
           {"hidden_width", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.hidden_width = parse_count(p, v);
            }},
           {"literal_eq9", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.literal_eq9 = parse_bool(p, v);
            }},
           {"eval_set_size", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.eval_set_size = parse_count(p, v);
            }},
           {"eval_steps", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.rl.eval_steps = parse_count(p, v);
            }},
       }},
      {"experiment",
       {
           {"seed", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.experiment.seed = parse_count(p, v);
            }},
           {"p_max_dbm", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.experiment.p_max_dbm = parse_double(p, v);
            }},
           {"p_max_dbm_sweep", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.experiment.p_max_dbm_sweep = parse_double_list(p, v);
            }},
           {"ue_mode", [](SystemConfig& c, const std::string& p, std::string_view v) {
              if (v == "fixed") {
                c.ue.mode = UePolicy::Mode::fixed;
              } else if (v == "random") {
                c.ue.mode = UePolicy::Mode::random;
              } else {
                throw ConfigError("config: " + p + ": expected fixed|random");
              }
            }},
           {"ue_fixed_per_ris", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.ue.fixed_per_ris = parse_count(p, v);
            }},
           {"ue_min_per_ris", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.ue.min_per_ris = parse_count(p, v);
            }},
           {"ue_max_per_ris", [](SystemConfig& c, const std::string& p, std::string_view v) {
              c.ue.max_per_ris = parse_count(p, v);
            }},
       }},
  };
  return table;
}

}  // namespace

EnvConfig SystemConfig::env_config() const { return env_config(experiment.p_max_dbm); }

EnvConfig SystemConfig::env_config(double p_max_dbm) const {
  EnvConfig env;
  env.topology = topology;
  env.channel = channel;
  env.reflection = reflection;
  env.noise = noise;
  env.max_power_w = dbm_to_watts(p_max_dbm);
  env.ue = ue;
  return env;
}

void SystemConfig::validate() const {
  env_config().validate();
  rl.validate();
  if (experiment.p_max_dbm_sweep.empty()) {
    throw ConfigError("config: experiment.p_max_dbm_sweep must not be empty");
  }
}

SystemConfig default_config() { return SystemConfig{}; }

SystemConfig parse_config_text(std::string_view text) {
  SystemConfig cfg;
  std::string section;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t eol = text.find('\n', start);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(start, eol - start);
    start = eol + 1;
    line_no += 1;

    const std::size_t comment = line.find('#');
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config: line " + std::to_string(line_no) + ": malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (key_table().find(section) == key_table().end()) {
        throw ConfigError("config: unknown section '" + section + "'");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError("config: key '" + key + "' appears before any [section]");
    }
    const auto& sections = key_table();
    const auto& keys = sections.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ConfigError("config: unknown key '" + section + "." + key + "'");
    }
    it->second(cfg, section + "." + key, value);
  }
  cfg.validate();
  return cfg;
}

SystemConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_paper_scale(SystemConfig& cfg) {
  cfg.topology.num_bs_antennas = 16;
  cfg.topology.num_ris = 4;
  cfg.topology.ris_elements_x = 4;
  cfg.topology.ris_elements_y = 4;
  cfg.topology.ue_slots_per_ris.assign(4, 4);
  cfg.rl.episodes = 1000;
  cfg.rl.steps_per_episode = 2000;
  cfg.rl.soft_update_tau = 0.0005;
  cfg.rl.minibatch = 128;
  cfg.rl.learning_rate = 1e-4;
  cfg.rl.hidden_width = 1024;
  cfg.rl.eval_set_size = 1000;
  cfg.ue.mode = UePolicy::Mode::random;
  cfg.ue.min_per_ris = 1;
  cfg.ue.max_per_ris = 4;
}

std::string resolved_config_json(const SystemConfig& cfg) {
  Json j;
  j["topology"] = {{"bs_antennas", cfg.topology.num_bs_antennas},
                   {"num_ris", cfg.topology.num_ris},
                   {"elements_x", cfg.topology.ris_elements_x},
                   {"elements_y", cfg.topology.ris_elements_y},
                   {"ue_slots_per_ris", cfg.topology.ue_slots_per_ris},
                   {"bs_ris_distance_m", cfg.topology.bs_ris_distance_m},
                   {"ris_ue_distance_m", cfg.topology.ris_ue_distance_m}};
  j["channel"] = {{"direct_clusters", cfg.channel.direct.num_clusters},
                  {"direct_paths", cfg.channel.direct.paths_per_cluster},
                  {"direct_los", cfg.channel.direct.include_los},
                  {"ris_clusters", cfg.channel.bs_ris.num_clusters},
                  {"ris_paths", cfg.channel.bs_ris.paths_per_cluster},
                  {"ris_los", cfg.channel.bs_ris.include_los},
                  {"angle_spread_rad", cfg.channel.direct.angle_spread_rad},
                  {"reference_loss_db", cfg.channel.path_loss.reference_loss_db},
                  {"pathloss_exponent_los", cfg.channel.path_loss.exponent_los},
                  {"pathloss_exponent_nlos", cfg.channel.path_loss.exponent_nlos},
                  {"carrier_wavelength_m", cfg.channel.path_loss.carrier_wavelength_m},
                  {"antenna_spacing_m", cfg.channel.path_loss.antenna_spacing_m},
                  {"ris_gain", cfg.channel.path_loss.ris_gain},
                  {"noise_w", cfg.noise.power_w}};
  j["reflection"] = {{"mode", cfg.reflection.mode == ReflectionMode::ideal ? "ideal" : "practical"},
                     {"steepness", cfg.reflection.steepness},
                     {"beta_min", cfg.reflection.beta_min},
                     {"phase_offset_rad", cfg.reflection.phase_offset},
                     {"theta_min_rad", cfg.reflection.theta_min},
                     {"theta_max_rad", cfg.reflection.theta_max}};
  j["rl"] = {{"episodes", cfg.rl.episodes},
             {"steps_per_episode", cfg.rl.steps_per_episode},
             {"discount", cfg.rl.discount},
             {"soft_update_tau", cfg.rl.soft_update_tau},
             {"minibatch", cfg.rl.minibatch},
             {"learning_rate", cfg.rl.learning_rate},
             {"buffer_capacity", cfg.rl.buffer_capacity},
             {"exploration_noise_std", cfg.rl.exploration_noise_std},
             {"hidden_width", cfg.rl.hidden_width},
             {"literal_eq9", cfg.rl.literal_eq9},
             {"eval_set_size", cfg.rl.eval_set_size},
             {"eval_steps", cfg.rl.eval_steps}};
  j["experiment"] = {{"seed", cfg.experiment.seed},
                     {"p_max_dbm", cfg.experiment.p_max_dbm},
                     {"p_max_dbm_sweep", cfg.experiment.p_max_dbm_sweep},
                     {"ue_mode", cfg.ue.mode == UePolicy::Mode::fixed ? "fixed" : "random"},
                     {"ue_fixed_per_ris", cfg.ue.fixed_per_ris},
                     {"ue_min_per_ris", cfg.ue.min_per_ris},
                     {"ue_max_per_ris", cfg.ue.max_per_ris}};
  return j.dump();
}

std::string config_template() {
  return R"(# risim experiment configuration (desk-scale defaults)

[topology]
bs_antennas = 8
num_ris = 2
elements_x = 4
elements_y = 2
max_ue_per_ris = 2
bs_ris_distance_m = 100.0
ris_ue_distance_m = 2.0

[channel]
direct_clusters = 4
direct_paths = 5
direct_los = false
ris_clusters = 4
ris_paths = 5
ris_los = true
angle_spread_deg = 7.5
reference_loss_db = 61.34
pathloss_exponent_los = 2.0
pathloss_exponent_nlos = 2.92
carrier_ghz = 28.0
antenna_spacing_over_wavelength = 0.5
ris_gain_db = 20.0
noise_dbm = -94.0

[reflection]
mode = practical
steepness = 1.6
beta_min = 0.2
phase_offset_rad = 1.3508848
theta_min_rad = -3.14159265358979
theta_max_rad = 3.14159265358979

[rl]
episodes = 100
steps_per_episode = 200
discount = 0.95
soft_update_tau = 0.005
minibatch = 64
learning_rate = 0.001
buffer_capacity = 100000
exploration_noise_std = 0.1
hidden_width = 96
literal_eq9 = false
eval_set_size = 64
eval_steps = 5

[experiment]
seed = 1
p_max_dbm = 20.0
p_max_dbm_sweep = 0, 5, 10, 15, 20
ue_mode = random
ue_min_per_ris = 1
ue_max_per_ris = 2
)";
}

}  // namespace risim
