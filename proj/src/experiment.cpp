// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/experiment.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

#include "risim/baselines.hpp"
#include "risim/ddpg.hpp"
#include "risim/errors.hpp"
#include "risim/units.hpp"

namespace risim {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

constexpr std::uint64_t kBaselineStream = 0xBA5E;
constexpr std::uint64_t kDumpStream = 0xD0000000;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void ensure_dir(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());
}

std::string header(const SystemConfig& cfg, const std::string& command) {
  return "# command: " + command + "\n# config: " + resolved_config_json(cfg) + "\n";
}

// Mean reward of the checkpointed policy over the frozen evaluation set.
double eval_checkpoint_mean(const DenseNetwork& actor, const SystemConfig& cfg,
                            double p_max_dbm) {
  return evaluate_policy(actor, cfg.env_config(p_max_dbm),
                         evaluation_stream_seed(cfg.experiment.seed), cfg.rl.eval_set_size,
                         cfg.rl.eval_steps);
}

struct BaselineMeans {
  double random = 0.0;
  double zero_forcing = 0.0;
  std::size_t zf_fallbacks = 0;
};

BaselineMeans eval_baselines_mean(const SystemConfig& cfg, double p_max_dbm) {
  const EnvConfig env_cfg = cfg.env_config(p_max_dbm);
  const std::uint64_t eval_seed = evaluation_stream_seed(cfg.experiment.seed);
  BaselineMeans means;
  for (std::size_t i = 0; i < cfg.rl.eval_set_size; ++i) {
    Environment env(env_cfg);
    Rng env_rng(Rng::mix(eval_seed, i));
    env.reset(env_rng);
    Rng baseline_rng(Rng::mix(Rng::mix(eval_seed, kBaselineStream), i));
    means.random += random_baseline(baseline_rng, env).reward;
    const BaselineResult zf = zf_baseline(baseline_rng, env);
    means.zero_forcing += zf.reward;
    if (zf.zf_fallback) means.zf_fallbacks += 1;
  }
  means.random /= static_cast<double>(cfg.rl.eval_set_size);
  means.zero_forcing /= static_cast<double>(cfg.rl.eval_set_size);
  return means;
}

std::string training_curve_csv(const SystemConfig& cfg, const TrainResult& result) {
  std::ostringstream out;
  out << header(cfg, "train");
  out << "episode,mean_eval_reward,best_reward_so_far,critic_loss,wall_time\n";
  for (const EpisodeStats& row : result.log) {
    out << row.episode << ',' << fmt(row.mean_eval_reward) << ',' << fmt(row.best_reward_so_far)
        << ',' << fmt(row.mean_critic_loss) << ',' << fmt(row.wall_seconds) << '\n';
  }
  return out.str();
}

// Artifacts are written even for an interrupted run (partial log plus the
// best checkpoint so far); the caller decides how to report the interruption.
TrainResult train_and_write(const SystemConfig& cfg, const std::string& out_dir,
                            const std::string& label, bool timing) {
  TrainResult result = train(cfg.env_config(), cfg.rl, cfg.experiment.seed, timing);
  const std::string suffix = label.empty() ? "" : "_" + label;
  atomic_write_file(out_dir + "/training_curve" + suffix + ".csv",
                    training_curve_csv(cfg, result));
  save_checkpoint(out_dir + "/best_weights" + suffix + ".ckpt", result.best_actor,
                  result.best_critic);
  return result;
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json arr = Json::array();
  for (const cplx& e : m.entries()) {
    arr.push_back(e.real());
    arr.push_back(e.imag());
  }
  return arr;
}

}  // namespace

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw ConfigError("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot move '" + tmp + "' into place: " + ec.message());
}

double run_train(const SystemConfig& cfg, const std::string& out_dir, bool timing) {
  cfg.validate();
  ensure_dir(out_dir);
  const TrainResult result = train_and_write(cfg, out_dir, "", timing);
  if (result.interrupted) {
    throw std::runtime_error("training interrupted after " +
                             std::to_string(result.log.size()) +
                             " episode(s); partial log and checkpoint written to " + out_dir);
  }
  return result.best_eval_reward;
}

void run_eval(const SystemConfig& cfg, const std::string& checkpoint_path,
              const std::string& out_dir) {
  cfg.validate();
  ensure_dir(out_dir);

  const Checkpoint ckpt = load_checkpoint(checkpoint_path);
  const ActionLayout layout = cfg.env_config().layout();
  if (ckpt.actor.input_dim() != layout.state_dim() ||
      ckpt.actor.output_dim() != layout.action_dim()) {
    throw ConfigError("eval: checkpoint dimensions (" + std::to_string(ckpt.actor.input_dim()) +
                      " -> " + std::to_string(ckpt.actor.output_dim()) +
                      ") do not match the config (" + std::to_string(layout.state_dim()) +
                      " -> " + std::to_string(layout.action_dim()) + ")");
  }

  std::ostringstream out;
  out << header(cfg, "eval");
  out << "p_max_dbm,ddpg_mean_sum_rate,random_mean_sum_rate,zf_mean_sum_rate,zf_fallbacks\n";
  for (double p_dbm : cfg.experiment.p_max_dbm_sweep) {
    const double ddpg_mean = eval_checkpoint_mean(ckpt.actor, cfg, p_dbm);
    const BaselineMeans base = eval_baselines_mean(cfg, p_dbm);
    out << fmt(p_dbm) << ',' << fmt(ddpg_mean) << ',' << fmt(base.random) << ','
        << fmt(base.zero_forcing) << ',' << base.zf_fallbacks << '\n';
  }
  atomic_write_file(out_dir + "/rate_vs_power.csv", out.str());
}

void run_sweep(const SystemConfig& cfg, const std::string& out_dir, bool timing) {
  cfg.validate();
  ensure_dir(out_dir);

  struct Variant {
    std::string label;
    UePolicy policy;
  };
  std::vector<Variant> variants;
  const std::size_t lo = cfg.ue.min_per_ris;
  const std::size_t hi = cfg.ue.max_per_ris;
  variants.push_back({"fixed-" + std::to_string(lo),
                      UePolicy{UePolicy::Mode::fixed, lo, lo, lo}});
  if (hi != lo) {
    variants.push_back({"fixed-" + std::to_string(hi),
                        UePolicy{UePolicy::Mode::fixed, hi, hi, hi}});
  }
  variants.push_back({"random-" + std::to_string(lo) + "-" + std::to_string(hi),
                      UePolicy{UePolicy::Mode::random, lo, lo, hi}});

  std::vector<Checkpoint> checkpoints;
  for (const Variant& variant : variants) {
    SystemConfig variant_cfg = cfg;
    variant_cfg.ue = variant.policy;
    const TrainResult result = train_and_write(variant_cfg, out_dir, variant.label, timing);
    if (result.interrupted) {
      throw std::runtime_error("sweep interrupted during variant '" + variant.label +
                               "'; partial artifacts written to " + out_dir);
    }
    checkpoints.push_back(Checkpoint{result.best_actor, result.best_critic});
  }

  // Cross-evaluation always uses the random-UE protocol from the base config.
  std::ostringstream out;
  out << header(cfg, "sweep");
  out << "variant,p_max_dbm,mean_sum_rate\n";
  for (std::size_t v = 0; v < variants.size(); ++v) {
    for (double p_dbm : cfg.experiment.p_max_dbm_sweep) {
      const double mean = eval_checkpoint_mean(checkpoints[v].actor, cfg, p_dbm);
      out << variants[v].label << ',' << fmt(p_dbm) << ',' << fmt(mean) << '\n';
    }
  }
  atomic_write_file(out_dir + "/sweep_comparison.csv", out.str());
}

void run_dump_channels(const SystemConfig& cfg, const std::string& out_dir, std::size_t count) {
  cfg.validate();
  if (count < 1) throw ConfigError("dump-channels: count must be >= 1");
  ensure_dir(out_dir);

  const Rng master(cfg.experiment.seed);
  Json doc;
  doc["command"] = "dump-channels";
  doc["config"] = Json::parse(resolved_config_json(cfg));
  doc["count"] = count;
  Json dumps = Json::array();
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = master.child(kDumpStream + i);
    const ChannelRealization real =
        draw_channel_realization(rng, cfg.topology, cfg.channel);
    Json dump;
    Json direct = Json::array();
    for (const ComplexMatrix& m : real.direct) direct.push_back(matrix_to_json(m));
    Json bs_to_ris = Json::array();
    for (const ComplexMatrix& m : real.bs_to_ris) bs_to_ris.push_back(matrix_to_json(m));
    Json ris_to_ue = Json::array();
    for (const ComplexMatrix& m : real.ris_to_ue) ris_to_ue.push_back(matrix_to_json(m));
    dump["direct"] = std::move(direct);
    dump["bs_to_ris"] = std::move(bs_to_ris);
    dump["ris_to_ue"] = std::move(ris_to_ue);
    dumps.push_back(std::move(dump));
  }
  doc["dumps"] = std::move(dumps);
  atomic_write_file(out_dir + "/channel_dumps.json", doc.dump(2) + "\n");
}

void run_baselines(const SystemConfig& cfg, const std::string& out_dir) {
  cfg.validate();
  ensure_dir(out_dir);
  const BaselineMeans means = eval_baselines_mean(cfg, cfg.experiment.p_max_dbm);
  std::ostringstream out;
  out << header(cfg, "baselines");
  out << "kind,mean_sum_rate,zf_fallbacks\n";
  out << "random," << fmt(means.random) << ",0\n";
  out << "zero_forcing_random_phase," << fmt(means.zero_forcing) << ',' << means.zf_fallbacks
      << '\n';
  atomic_write_file(out_dir + "/baselines.csv", out.str());
}

}  // namespace risim
