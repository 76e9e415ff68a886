// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_EXPERIMENT_HPP
#define RISIM_EXPERIMENT_HPP

#include <string>

#include "risim/config.hpp"

namespace risim {

// Output artifacts land in out_dir (created if missing); every file embeds
// the resolved config and seed in a '#' header or JSON field, and writes are
// atomic (temp file + rename). Commands throw ConfigError for invalid input
// and propagate other exceptions; the CLI maps these to exit codes 1 and 2.

// Trains the agent, writes training_curve.csv and best_weights.ckpt, and
// returns the best evaluation reward.
double run_train(const SystemConfig& cfg, const std::string& out_dir, bool timing = false);

// Evaluates a checkpoint and both baselines over the P_max sweep list on the
// frozen evaluation set; writes rate_vs_power.csv.
void run_eval(const SystemConfig& cfg, const std::string& checkpoint_path,
              const std::string& out_dir);

// Trains fixed-UE and random-UE variants, cross-evaluates every checkpoint on
// the random-UE protocol over the power sweep, and writes per-variant curves
// plus sweep_comparison.csv.
void run_sweep(const SystemConfig& cfg, const std::string& out_dir, bool timing = false);

// Writes `count` seeded channel realizations to channel_dumps.json
// (real/imag interleaved arrays per link).
void run_dump_channels(const SystemConfig& cfg, const std::string& out_dir, std::size_t count);

// Scores the random and zero-forcing baselines on the evaluation set at the
// configured P_max; writes baselines.csv.
void run_baselines(const SystemConfig& cfg, const std::string& out_dir);

// Atomic write helper shared by the drivers (exposed for tests).
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace risim

#endif
