// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_CONFIG_HPP
#define RISIM_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "risim/ddpg.hpp"
#include "risim/env.hpp"

namespace risim {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  double p_max_dbm = 20.0;
  std::vector<double> p_max_dbm_sweep = {0.0, 5.0, 10.0, 15.0, 20.0};
};

// Full experiment description. Defaults are desk scale (small topology and
// network width, short training); apply_paper_scale() restores the full-size
// setup: 16 BS antennas, four 16-element RISs with up to 4 UEs each, 1000
// episodes of 2000 steps, 1024-wide networks, minibatch 128, learning rate
// 1e-4, soft update 5e-4, and 1000 evaluation environments.
struct SystemConfig {
  Topology topology{8, 2, 4, 2, {2, 2}, 100.0, 2.0};
  // 20 dB RIS gain compensation per hop; at the default geometry this keeps
  // the reflected path dominant over the blocked direct path, so the phase
  // decisions actually move the sum rate.
  ChannelParams channel = [] {
    ChannelParams p;
    p.path_loss.ris_gain = 100.0;
    return p;
  }();
  NoiseModel noise;
  ReflectionParams reflection;
  Hyperparams rl{100, 200, 0.95, 0.005, 64, 1e-3, 100000, 0.1, 96, false, 64, 5};
  UePolicy ue{UePolicy::Mode::random, 2, 1, 2};
  ExperimentConfig experiment;

  EnvConfig env_config() const;                   // at experiment.p_max_dbm
  EnvConfig env_config(double p_max_dbm) const;
  void validate() const;
};

SystemConfig default_config();

// Strict section/key-value parser; unknown sections or keys and malformed
// values raise ConfigError naming the offending "section.key" path.
SystemConfig parse_config_text(std::string_view text);
SystemConfig parse_config_file(const std::string& path);

void apply_paper_scale(SystemConfig& cfg);

// One-line JSON echo of every resolved field, embedded in output files so any
// result is regenerable from its own artifact.
std::string resolved_config_json(const SystemConfig& cfg);

// Sample config file matching the built-in defaults (used by `config-template`).
std::string config_template();

}  // namespace risim

#endif
