// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_DDPG_HPP
#define RISIM_DDPG_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "risim/env.hpp"
#include "risim/neural.hpp"
#include "risim/rng.hpp"

namespace risim {

struct Hyperparams {
  std::size_t episodes = 100;          // I
  std::size_t steps_per_episode = 200; // T
  double discount = 0.95;              // gamma
  double soft_update_tau = 0.0005;
  std::size_t minibatch = 128;         // D
  double learning_rate = 1e-4;         // both optimizers
  std::size_t buffer_capacity = 100000;
  double exploration_noise_std = 0.1;
  std::size_t hidden_width = 128;
  bool literal_eq9 = false;            // drop the bootstrap on the last minibatch index
                                       // instead of on terminal transitions
  std::size_t eval_set_size = 100;     // held-out environments scored after each episode
  std::size_t eval_steps = 5;          // policy steps per evaluation environment

  void validate() const;
};

struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
  bool terminal = false;  // last step of its episode
};

// FIFO store with uniform sampling; when full, the oldest transition is
// evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  // index 0 is the oldest stored transition.
  const Transition& at(std::size_t index) const;
  std::vector<std::size_t> sample_indices(Rng& rng, std::size_t count) const;

 private:
  std::size_t capacity_ = 0;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
  std::vector<Transition> slots_;
};

// Policy and target actor-critic pairs; targets start as exact copies.
struct AgentNets {
  DenseNetwork actor;
  DenseNetwork target_actor;
  CriticNetwork critic;
  CriticNetwork target_critic;
};

AgentNets make_agent_nets(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim,
                          Rng& rng);

// pi(s) plus i.i.d. Gaussian exploration noise per component; no clipping
// (the environment projects onto the feasible set).
std::vector<double> select_action(const DenseNetwork& actor, std::span<const double> state,
                                  double noise_std, Rng& rng);

// Bootstrapped regression targets y_i = r_i + gamma * Q'(s', pi'(s')); the
// bootstrap is dropped for terminal transitions, or, with literal_eq9, for
// the last minibatch index only.
std::vector<double> td_targets(const AgentNets& nets, const ReplayBuffer& buffer,
                               std::span<const std::size_t> indices, double discount,
                               bool literal_eq9 = false);

// One Adam step on the critic minimizing the mean squared TD error; returns
// the pre-step loss.
double critic_update(AgentNets& nets, const ReplayBuffer& buffer,
                     std::span<const std::size_t> indices, std::span<const double> targets,
                     AdamState& adam);

// Generic deterministic-policy-gradient ascent step: critic_eval(state,
// action) must return {q, dq/daction}. Returns the pre-step mean Q. The
// critic is only read.
struct CriticEval {
  double q = 0.0;
  std::vector<double> dq_daction;
};

template <typename CriticFn>
double actor_ascent_step(DenseNetwork& actor, const CriticFn& critic_eval,
                         const std::vector<std::vector<double>>& states, AdamState& adam) {
  GradBlocks grads = actor.make_grads();
  const double inv_batch = 1.0 / static_cast<double>(states.size());
  double mean_q = 0.0;
  for (const std::vector<double>& state : states) {
    DenseNetwork::Cache cache;
    const std::vector<double> action = actor.forward(state, &cache);
    CriticEval eval = critic_eval(state, action);
    mean_q += eval.q * inv_batch;
    // Adam minimizes, so feed the negated policy gradient to ascend Q.
    for (double& g : eval.dq_daction) g *= -inv_batch;
    actor.backward(cache, eval.dq_daction, grads);
  }
  adam_step(actor.param_blocks(), grads, adam);
  return mean_q;
}

// Policy-gradient step through the policy critic on a replayed minibatch;
// critic weights are untouched. Returns the pre-step mean Q.
double actor_update(AgentNets& nets, const ReplayBuffer& buffer,
                    std::span<const std::size_t> indices, AdamState& adam);

// theta' <- tau*theta + (1-tau)*theta' for both target networks.
void soft_update_targets(AgentNets& nets, double tau);

// Deterministic actor forward pass.
std::vector<double> infer(const DenseNetwork& actor, std::span<const double> state);

// Mean final-step reward of the deterministic policy over a frozen set of
// seeded evaluation environments (environment i always reproduces the same
// presence pattern, channel realization and initial state).
double evaluate_policy(const DenseNetwork& actor, const EnvConfig& env_cfg,
                       std::uint64_t eval_seed, std::size_t num_envs, std::size_t steps);

// Seed of the frozen evaluation set derived from a master seed; evaluation
// environment i uses Rng(Rng::mix(evaluation_stream_seed(seed), i)).
std::uint64_t evaluation_stream_seed(std::uint64_t master_seed);

struct EpisodeStats {
  std::size_t episode = 0;  // 1-based
  double mean_eval_reward = 0.0;
  double best_reward_so_far = 0.0;
  double mean_critic_loss = 0.0;
  double wall_seconds = 0.0;  // 0 unless wall-time recording is enabled
};

struct TrainResult {
  DenseNetwork best_actor;
  CriticNetwork best_critic;
  double best_eval_reward = 0.0;
  std::vector<EpisodeStats> log;
  bool interrupted = false;  // stop was requested before all episodes ran
};

// Cooperative stop flag (async-signal-safe): training finishes the episode in
// flight, records it, and returns with interrupted set so partial logs and
// the best checkpoint so far can still be written.
void set_training_stop(bool stop);
bool training_stop_requested();

// Full training driver: per episode draw an environment, explore/store/sample/
// update for T steps, then score the policy on the frozen evaluation set and
// checkpoint the best weights seen so far.
TrainResult train(const EnvConfig& env_cfg, const Hyperparams& hp, std::uint64_t seed,
                  bool record_wall_time = false);

}  // namespace risim

#endif
