// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include <csignal>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "risim/config.hpp"
#include "risim/ddpg.hpp"
#include "risim/errors.hpp"
#include "risim/experiment.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  bool paper_scale = false;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Configuration file path");
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--seed", opts.seed, "Override the experiment seed");
  cmd->add_option("--mode", opts.mode, "Override the reflection mode")
      ->check(CLI::IsMember({"ideal", "practical"}));
  cmd->add_flag("--paper-scale", opts.paper_scale,
                "Restore the full-scale setup (1000x2000 training, 1024-wide networks)");
  cmd->add_flag("--timing", opts.timing,
                "Record wall time in training logs (off by default so reruns are byte-identical)");
}

risim::SystemConfig resolve_config(const CommonOptions& opts) {
  risim::SystemConfig cfg = opts.config_path.empty()
                                ? risim::default_config()
                                : risim::parse_config_file(opts.config_path);
  if (opts.paper_scale) risim::apply_paper_scale(cfg);
  if (opts.seed) cfg.experiment.seed = *opts.seed;
  if (opts.mode) {
    cfg.reflection.mode = *opts.mode == "ideal" ? risim::ReflectionMode::ideal
                                                : risim::ReflectionMode::practical;
  }
  cfg.validate();
  return cfg;
}

}  // namespace

extern "C" void handle_interrupt(int) { risim::set_training_stop(true); }

int main(int argc, char** argv) {
  std::signal(SIGINT, handle_interrupt);
  std::signal(SIGTERM, handle_interrupt);

  CLI::App app{"risim: multi-RIS multiuser downlink simulator with DDPG precoding"};
  app.require_subcommand(1);

  CommonOptions train_opts, eval_opts, sweep_opts, dump_opts, baseline_opts;
  std::string checkpoint_path;
  std::size_t dump_count = 1;

  CLI::App* cmd_train = app.add_subcommand("train", "Train the agent and checkpoint the best weights");
  add_common(cmd_train, train_opts);

  CLI::App* cmd_eval = app.add_subcommand("eval", "Evaluate a checkpoint over the power sweep");
  add_common(cmd_eval, eval_opts);
  cmd_eval->add_option("--checkpoint", checkpoint_path, "Checkpoint file")->required();

  CLI::App* cmd_sweep =
      app.add_subcommand("sweep", "Train fixed/random UE variants and cross-evaluate them");
  add_common(cmd_sweep, sweep_opts);

  CLI::App* cmd_dump = app.add_subcommand("dump-channels", "Write seeded channel realizations");
  add_common(cmd_dump, dump_opts);
  cmd_dump->add_option("--count", dump_count, "Number of realizations");

  CLI::App* cmd_base = app.add_subcommand("baselines", "Score the non-learning baselines");
  add_common(cmd_base, baseline_opts);

  CLI::App* cmd_template =
      app.add_subcommand("config-template", "Print a sample configuration file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_template->parsed()) {
      std::cout << risim::config_template();
      return 0;
    }
    if (cmd_train->parsed()) {
      const auto cfg = resolve_config(train_opts);
      const double best = risim::run_train(cfg, train_opts.out_dir, train_opts.timing);
      std::cout << "best evaluation reward: " << best << "\n";
      return 0;
    }
    if (cmd_eval->parsed()) {
      const auto cfg = resolve_config(eval_opts);
      risim::run_eval(cfg, checkpoint_path, eval_opts.out_dir);
      return 0;
    }
    if (cmd_sweep->parsed()) {
      const auto cfg = resolve_config(sweep_opts);
      risim::run_sweep(cfg, sweep_opts.out_dir, sweep_opts.timing);
      return 0;
    }
    if (cmd_dump->parsed()) {
      const auto cfg = resolve_config(dump_opts);
      risim::run_dump_channels(cfg, dump_opts.out_dir, dump_count);
      return 0;
    }
    if (cmd_base->parsed()) {
      const auto cfg = resolve_config(baseline_opts);
      risim::run_baselines(cfg, baseline_opts.out_dir);
      return 0;
    }
  } catch (const risim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
