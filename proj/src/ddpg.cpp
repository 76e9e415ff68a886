// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/ddpg.hpp"

#include <atomic>
#include <chrono>
#include <string>
#include <utility>

#include "risim/errors.hpp"

namespace risim {

namespace {

// Child-stream tags for the master seed.
constexpr std::uint64_t kNetInitStream = 0x4e455453;   // network init
constexpr std::uint64_t kEvalSeedStream = 0x4556414c;  // evaluation set
constexpr std::uint64_t kEpisodeStream = 0x45500000;   // + episode index
constexpr std::uint64_t kLearnStream = 0x4c450000;     // + episode index

std::atomic<bool> g_stop_requested{false};

}  // namespace

void set_training_stop(bool stop) { g_stop_requested.store(stop, std::memory_order_relaxed); }

bool training_stop_requested() { return g_stop_requested.load(std::memory_order_relaxed); }

void Hyperparams::validate() const {
  if (episodes < 1 || steps_per_episode < 1) throw ConfigError("rl: episodes and steps must be >= 1");
  if (discount < 0.0 || discount >= 1.0) throw ConfigError("rl: discount must be in [0, 1)");
  if (!(soft_update_tau > 0.0) || soft_update_tau > 1.0) {
    throw ConfigError("rl: soft_update_tau must be in (0, 1]");
  }
  if (minibatch < 1) throw ConfigError("rl: minibatch must be >= 1");
  if (minibatch > buffer_capacity) throw ConfigError("rl: minibatch exceeds buffer capacity");
  if (!(learning_rate > 0.0)) throw ConfigError("rl: learning rate must be positive");
  if (!(exploration_noise_std > 0.0)) throw ConfigError("rl: noise std must be positive");
  if (hidden_width < 1) throw ConfigError("rl: hidden width must be >= 1");
  if (eval_set_size < 1 || eval_steps < 1) throw ConfigError("rl: eval settings must be >= 1");
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ < 1) throw ConfigError("replay buffer: capacity must be >= 1");
  slots_.reserve(std::min<std::size_t>(capacity_, 4096));
}

void ReplayBuffer::push(Transition t) {
  if (slots_.size() < capacity_) {
    slots_.push_back(std::move(t));
    head_ = (head_ + 1) % capacity_;
    size_ = slots_.size();
    return;
  }
  slots_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t index) const {
  if (index >= size_) throw ShapeError("replay buffer: index out of range");
  if (size_ < capacity_) return slots_[index];
  return slots_[(head_ + index) % capacity_];
}

std::vector<std::size_t> ReplayBuffer::sample_indices(Rng& rng, std::size_t count) const {
  if (size_ == 0) throw StateError("replay buffer: empty");
  std::vector<std::size_t> indices(count);
  for (std::size_t& i : indices) i = rng.uniform_int(0, size_ - 1);
  return indices;
}

AgentNets make_agent_nets(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim,
                          Rng& rng) {
  AgentNets nets;
  nets.actor = build_actor(state_dim, action_dim, hidden_dim, rng);
  nets.critic = build_critic(state_dim, action_dim, hidden_dim, rng);
  nets.target_actor = nets.actor;
  nets.target_critic = nets.critic;
  return nets;
}

std::vector<double> select_action(const DenseNetwork& actor, std::span<const double> state,
                                  double noise_std, Rng& rng) {
  std::vector<double> action = actor.forward(state);
  if (noise_std > 0.0) {
    for (double& a : action) a += rng.gaussian(noise_std);
  }
  return action;
}

std::vector<double> td_targets(const AgentNets& nets, const ReplayBuffer& buffer,
                               std::span<const std::size_t> indices, double discount,
                               bool literal_eq9) {
  std::vector<double> targets(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const Transition& t = buffer.at(indices[i]);
    const bool drop_bootstrap = literal_eq9 ? (i + 1 == indices.size()) : t.terminal;
    if (drop_bootstrap) {
      targets[i] = t.reward;
      continue;
    }
    const std::vector<double> next_action = nets.target_actor.forward(t.next_state);
    const double next_q = nets.target_critic.forward(t.next_state, next_action);
    targets[i] = t.reward + discount * next_q;
  }
  return targets;
}

double critic_update(AgentNets& nets, const ReplayBuffer& buffer,
                     std::span<const std::size_t> indices, std::span<const double> targets,
                     AdamState& adam) {
  if (indices.size() != targets.size()) {
    throw ShapeError("critic_update: targets length mismatch");
  }
  GradBlocks grads = nets.critic.make_grads();
  const double inv_batch = 1.0 / static_cast<double>(indices.size());
  double loss = 0.0;
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const Transition& t = buffer.at(indices[i]);
    CriticNetwork::Cache cache;
    const double q = nets.critic.forward(t.state, t.action, &cache);
    const double err = q - targets[i];
    loss += err * err * inv_batch;
    nets.critic.backward(cache, 2.0 * err * inv_batch, &grads);
  }
  adam_step(nets.critic.param_blocks(), grads, adam);
  return loss;
}

double actor_update(AgentNets& nets, const ReplayBuffer& buffer,
                    std::span<const std::size_t> indices, AdamState& adam) {
  std::vector<std::vector<double>> states;
  states.reserve(indices.size());
  for (std::size_t idx : indices) states.push_back(buffer.at(idx).state);
  const CriticNetwork& critic = nets.critic;
  return actor_ascent_step(
      nets.actor,
      [&critic](const std::vector<double>& state, const std::vector<double>& action) {
        CriticNetwork::Cache cache;
        CriticEval eval;
        eval.q = critic.forward(state, action, &cache);
        eval.dq_daction = critic.backward(cache, 1.0, nullptr).action;
        return eval;
      },
      states, adam);
}

void soft_update_targets(AgentNets& nets, double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw ConfigError("soft_update: tau must be in (0, 1]");
  soft_update_params(nets.target_actor.param_blocks(),
                     static_cast<const DenseNetwork&>(nets.actor).param_blocks(), tau);
  soft_update_params(nets.target_critic.param_blocks(),
                     static_cast<const CriticNetwork&>(nets.critic).param_blocks(), tau);
}

std::vector<double> infer(const DenseNetwork& actor, std::span<const double> state) {
  return actor.forward(state);
}

std::uint64_t evaluation_stream_seed(std::uint64_t master_seed) {
  return Rng::mix(master_seed, kEvalSeedStream);
}

double evaluate_policy(const DenseNetwork& actor, const EnvConfig& env_cfg,
                       std::uint64_t eval_seed, std::size_t num_envs, std::size_t steps) {
  double total = 0.0;
  for (std::size_t i = 0; i < num_envs; ++i) {
    Environment env(env_cfg);
    Rng rng(Rng::mix(eval_seed, i));
    std::vector<double> state = env.reset(rng);
    double reward = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
      const std::vector<double> action = actor.forward(state);
      Environment::StepResult result = env.step(action);
      reward = result.reward;
      state = std::move(result.next_state);
    }
    total += reward;
  }
  return total / static_cast<double>(num_envs);
}

TrainResult train(const EnvConfig& env_cfg, const Hyperparams& hp, std::uint64_t seed,
                  bool record_wall_time) {
  env_cfg.validate();
  hp.validate();

  const ActionLayout layout = env_cfg.layout();
  const Rng master(seed);
  Rng init_rng = master.child(kNetInitStream);
  AgentNets nets = make_agent_nets(layout.state_dim(), layout.action_dim(), hp.hidden_width,
                                   init_rng);
  AdamState adam_critic = AdamState::like(
      static_cast<const CriticNetwork&>(nets.critic).param_blocks(),
      AdamParams{hp.learning_rate, 0.9, 0.999, 1e-8});
  AdamState adam_actor = AdamState::like(
      static_cast<const DenseNetwork&>(nets.actor).param_blocks(),
      AdamParams{hp.learning_rate, 0.9, 0.999, 1e-8});

  ReplayBuffer buffer(hp.buffer_capacity);
  const std::uint64_t eval_seed = evaluation_stream_seed(seed);

  TrainResult result;
  result.best_eval_reward = 0.0;
  bool have_best = false;

  Environment env(env_cfg);
  const auto t_start = std::chrono::steady_clock::now();

  for (std::size_t episode = 1; episode <= hp.episodes; ++episode) {
    Rng env_rng = master.child(kEpisodeStream + episode);
    Rng learn_rng = master.child(kLearnStream + episode);
    std::vector<double> state = env.reset(env_rng);

    double loss_sum = 0.0;
    std::size_t loss_count = 0;
    for (std::size_t t = 1; t <= hp.steps_per_episode; ++t) {
      std::vector<double> action =
          select_action(nets.actor, state, hp.exploration_noise_std, learn_rng);
      Environment::StepResult step = env.step(action);

      Transition transition;
      transition.state = state;
      transition.action = std::move(action);
      transition.reward = step.reward;
      transition.next_state = step.next_state;
      transition.terminal = (t == hp.steps_per_episode);
      buffer.push(std::move(transition));

      if (buffer.size() >= hp.minibatch) {
        const std::vector<std::size_t> indices = buffer.sample_indices(learn_rng, hp.minibatch);
        const std::vector<double> targets =
            td_targets(nets, buffer, indices, hp.discount, hp.literal_eq9);
        loss_sum += critic_update(nets, buffer, indices, targets, adam_critic);
        loss_count += 1;
        actor_update(nets, buffer, indices, adam_actor);
        soft_update_targets(nets, hp.soft_update_tau);
      }
      state = std::move(step.next_state);
    }

    const double eval_reward =
        evaluate_policy(nets.actor, env_cfg, eval_seed, hp.eval_set_size, hp.eval_steps);
    if (!have_best || eval_reward > result.best_eval_reward) {
      result.best_eval_reward = eval_reward;
      result.best_actor = nets.actor;
      result.best_critic = nets.critic;
      have_best = true;
    }

    EpisodeStats stats;
    stats.episode = episode;
    stats.mean_eval_reward = eval_reward;
    stats.best_reward_so_far = result.best_eval_reward;
    stats.mean_critic_loss = loss_count > 0 ? loss_sum / static_cast<double>(loss_count) : 0.0;
    if (record_wall_time) {
      stats.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    }
    result.log.push_back(stats);

    if (training_stop_requested()) {
      result.interrupted = episode < hp.episodes;
      break;
    }
  }
  return result;
}

}  // namespace risim
