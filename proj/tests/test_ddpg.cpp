// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risim/ddpg.hpp"
#include "risim/errors.hpp"

using namespace risim;

namespace {

EnvConfig tiny_env_config() {
  EnvConfig cfg;
  cfg.topology.num_bs_antennas = 2;
  cfg.topology.num_ris = 1;
  cfg.topology.ris_elements_x = 1;
  cfg.topology.ris_elements_y = 1;
  cfg.topology.ue_slots_per_ris = {1};
  cfg.channel.direct = {2, 2, false, deg_to_rad(7.5)};
  cfg.channel.bs_ris = {2, 2, true, deg_to_rad(7.5)};
  cfg.channel.ris_ue = {2, 2, true, deg_to_rad(7.5)};
  cfg.channel.path_loss.ris_gain = 100.0;
  cfg.ue.mode = UePolicy::Mode::fixed;
  cfg.ue.fixed_per_ris = 1;
  return cfg;
}

// Zeroes every parameter and sets the critic's output bias, making it a
// constant function of both inputs.
void make_constant_critic(CriticNetwork& critic, double value) {
  for (auto* block : critic.param_blocks()) std::fill(block->begin(), block->end(), 0.0);
  (*critic.param_blocks()[11])[0] = value;
}

Transition make_transition(std::size_t state_dim, std::size_t action_dim, double reward,
                           bool terminal, Rng& rng) {
  Transition t;
  t.state.resize(state_dim);
  for (double& v : t.state) v = rng.uniform(-1.0, 1.0);
  t.action.resize(action_dim);
  for (double& v : t.action) v = rng.uniform(-1.0, 1.0);
  t.reward = reward;
  t.next_state.resize(state_dim);
  for (double& v : t.next_state) v = rng.uniform(-1.0, 1.0);
  t.terminal = terminal;
  return t;
}

}  // namespace

TEST_CASE("select_action with zero noise is the deterministic policy output") {
  Rng rng(101);
  DenseNetwork actor = build_actor(6, 4, 8, rng);
  Rng in_rng(102);
  std::vector<double> state(6);
  for (double& v : state) v = in_rng.uniform(-1.0, 1.0);
  Rng noise_rng(103);
  const auto noisy = select_action(actor, state, 0.0, noise_rng);
  const auto plain = infer(actor, state);
  REQUIRE(noisy.size() == plain.size());
  for (std::size_t i = 0; i < plain.size(); ++i) CHECK(noisy[i] == plain[i]);
}

TEST_CASE("exploration noise has the stated variance") {
  Rng rng(104);
  DenseNetwork actor = build_actor(4, 3, 6, rng);
  std::vector<double> state = {0.1, -0.2, 0.3, -0.4};
  const auto base = infer(actor, state);
  Rng noise_rng(105);
  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  for (int draw = 0; draw < 10000; ++draw) {
    const auto a = select_action(actor, state, 0.1, noise_rng);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double n = a[i] - base[i];
      sum += n;
      sum_sq += n * n;
      count += 1;
    }
  }
  const double mean = sum / static_cast<double>(count);
  const double var = sum_sq / static_cast<double>(count) - mean * mean;
  CHECK(var == doctest::Approx(0.01).epsilon(0.10));
}

TEST_CASE("action length follows the layout formula") {
  const ActionLayout layout{3, 2, 2, 4};
  Rng rng(106);
  DenseNetwork actor = build_actor(layout.state_dim(), layout.action_dim(), 8, rng);
  std::vector<double> state(layout.state_dim(), 0.05);
  Rng noise_rng(107);
  CHECK(select_action(actor, state, 0.1, noise_rng).size() == 2 * (3 * 2 + 2 * 4));
}

TEST_CASE("td targets") {
  Rng rng(108);
  AgentNets nets = make_agent_nets(6, 4, 8, rng);
  make_constant_critic(nets.target_critic, 2.0);

  ReplayBuffer buffer(8);
  Rng t_rng(109);
  buffer.push(make_transition(6, 4, 1.0, false, t_rng));
  buffer.push(make_transition(6, 4, -0.5, true, t_rng));
  buffer.push(make_transition(6, 4, 3.0, false, t_rng));
  const std::vector<std::size_t> indices = {0, 1, 2};

  SUBCASE("discount zero kills the bootstrap") {
    const auto y = td_targets(nets, buffer, indices, 0.0);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(-0.5));
    CHECK(y[2] == doctest::Approx(3.0));
  }
  SUBCASE("terminal transitions are not bootstrapped") {
    const auto y = td_targets(nets, buffer, indices, 0.95);
    CHECK(y[0] == doctest::Approx(1.0 + 0.95 * 2.0));  // = 2.9
    CHECK(y[1] == doctest::Approx(-0.5));
    CHECK(y[2] == doctest::Approx(3.0 + 0.95 * 2.0));
  }
  SUBCASE("hand case r=1, Q'=2, gamma=0.95 gives 2.9") {
    const std::vector<std::size_t> one = {0};
    const auto y = td_targets(nets, buffer, one, 0.95);
    CHECK(y[0] == doctest::Approx(2.9).epsilon(1e-12));
  }
  SUBCASE("literal reading drops the bootstrap on the last minibatch index only") {
    const auto y = td_targets(nets, buffer, indices, 0.95, true);
    CHECK(y[0] == doctest::Approx(2.9));
    CHECK(y[1] == doctest::Approx(-0.5 + 0.95 * 2.0));  // terminal flag ignored
    CHECK(y[2] == doctest::Approx(3.0));                // last index: reward only
  }
}

TEST_CASE("critic update loss on a hand-built singleton") {
  Rng rng(110);
  AgentNets nets = make_agent_nets(6, 4, 8, rng);
  make_constant_critic(nets.critic, 0.0);  // Q = 0 everywhere
  ReplayBuffer buffer(4);
  Rng t_rng(111);
  buffer.push(make_transition(6, 4, 0.0, true, t_rng));
  const std::vector<std::size_t> indices = {0};
  const std::vector<double> targets = {2.0};
  AdamState adam = AdamState::like(
      static_cast<const CriticNetwork&>(nets.critic).param_blocks(), AdamParams{});
  const double loss = critic_update(nets, buffer, indices, targets, adam);
  CHECK(loss == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("critic update with perfect targets leaves weights unchanged") {
  Rng rng(112);
  AgentNets nets = make_agent_nets(6, 4, 8, rng);
  ReplayBuffer buffer(4);
  Rng t_rng(113);
  buffer.push(make_transition(6, 4, 0.7, true, t_rng));
  const std::vector<std::size_t> indices = {0};
  const Transition& t = buffer.at(0);
  const std::vector<double> targets = {nets.critic.forward(t.state, t.action)};

  std::vector<std::vector<double>> before;
  for (const auto* b : static_cast<const CriticNetwork&>(nets.critic).param_blocks()) {
    before.push_back(*b);
  }
  AdamState adam = AdamState::like(
      static_cast<const CriticNetwork&>(nets.critic).param_blocks(), AdamParams{});
  const double loss = critic_update(nets, buffer, indices, targets, adam);
  CHECK(loss == 0.0);
  const auto after = static_cast<const CriticNetwork&>(nets.critic).param_blocks();
  for (std::size_t b = 0; b < after.size(); ++b) {
    for (std::size_t i = 0; i < after[b]->size(); ++i) CHECK((*after[b])[i] == before[b][i]);
  }
}

TEST_CASE("critic loss decreases on a frozen minibatch") {
  Rng rng(114);
  AgentNets nets = make_agent_nets(6, 4, 8, rng);
  ReplayBuffer buffer(8);
  Rng t_rng(115);
  for (int i = 0; i < 4; ++i) buffer.push(make_transition(6, 4, i * 0.5, true, t_rng));
  const std::vector<std::size_t> indices = {0, 1, 2, 3};
  const std::vector<double> targets = {1.0, -1.0, 0.5, 2.0};
  AdamState adam = AdamState::like(
      static_cast<const CriticNetwork&>(nets.critic).param_blocks(),
      AdamParams{1e-2, 0.9, 0.999, 1e-8});
  double first = 0.0, last = 0.0;
  for (int step = 0; step < 100; ++step) {
    const double loss = critic_update(nets, buffer, indices, targets, adam);
    if (step == 0) first = loss;
    last = loss;
  }
  CHECK(last < first);
  CHECK(last < 0.05 * first);
}

TEST_CASE("actor update against a constant critic changes nothing") {
  Rng rng(116);
  AgentNets nets = make_agent_nets(6, 4, 8, rng);
  make_constant_critic(nets.critic, 5.0);
  ReplayBuffer buffer(4);
  Rng t_rng(117);
  buffer.push(make_transition(6, 4, 0.0, true, t_rng));
  buffer.push(make_transition(6, 4, 0.0, true, t_rng));
  const std::vector<std::size_t> indices = {0, 1};

  std::vector<std::vector<double>> before;
  for (const auto* b : static_cast<const DenseNetwork&>(nets.actor).param_blocks()) {
    before.push_back(*b);
  }
  AdamState adam = AdamState::like(
      static_cast<const DenseNetwork&>(nets.actor).param_blocks(), AdamParams{});
  const double mean_q = actor_update(nets, buffer, indices, adam);
  CHECK(mean_q == doctest::Approx(5.0));
  const auto after = static_cast<const DenseNetwork&>(nets.actor).param_blocks();
  for (std::size_t b = 0; b < after.size(); ++b) {
    for (std::size_t i = 0; i < after[b]->size(); ++i) CHECK((*after[b])[i] == before[b][i]);
  }
}

TEST_CASE("actor ascends a concave toy critic toward its optimum") {
  Rng rng(118);
  DenseNetwork actor = build_actor(3, 2, 6, rng);
  const std::vector<double> target_action = {0.4, -0.6};
  const auto toy_critic = [&](const std::vector<double>&, const std::vector<double>& action) {
    CriticEval eval;
    eval.q = 0.0;
    eval.dq_daction.resize(action.size());
    for (std::size_t i = 0; i < action.size(); ++i) {
      const double diff = action[i] - target_action[i];
      eval.q -= diff * diff;
      eval.dq_daction[i] = -2.0 * diff;
    }
    return eval;
  };
  std::vector<std::vector<double>> states;
  Rng s_rng(119);
  for (int i = 0; i < 4; ++i) {
    std::vector<double> s(3);
    for (double& v : s) v = s_rng.uniform(-1.0, 1.0);
    states.push_back(s);
  }
  AdamState adam = AdamState::like(
      static_cast<const DenseNetwork&>(actor).param_blocks(),
      AdamParams{1e-2, 0.9, 0.999, 1e-8});
  std::vector<double> qs;
  for (int step = 0; step < 200; ++step) {
    qs.push_back(actor_ascent_step(actor, toy_critic, states, adam));
  }
  CHECK(qs.back() > qs.front());
  CHECK(qs.back() > -0.05);  // near the optimum value 0
  // Trend is non-decreasing up to optimizer jitter: compare window means.
  const auto window_mean = [&](std::size_t begin, std::size_t end) {
    double sum = 0.0;
    for (std::size_t i = begin; i < end; ++i) sum += qs[i];
    return sum / static_cast<double>(end - begin);
  };
  CHECK(window_mean(150, 200) >= window_mean(0, 50));
  CHECK(window_mean(150, 200) >= window_mean(50, 100) - 1e-9);
}

TEST_CASE("actor gradient matches finite differences of the minibatch objective") {
  Rng rng(120);
  AgentNets nets = make_agent_nets(4, 3, 5, rng);
  ReplayBuffer buffer(4);
  Rng t_rng(121);
  for (int i = 0; i < 3; ++i) buffer.push(make_transition(4, 3, 0.0, true, t_rng));
  const std::vector<std::size_t> indices = {0, 1, 2};

  // Analytic gradient: same accumulation actor_update performs, not applied.
  GradBlocks grads = nets.actor.make_grads();
  const double inv_batch = 1.0 / 3.0;
  for (std::size_t idx : indices) {
    const Transition& t = buffer.at(idx);
    DenseNetwork::Cache cache;
    const auto action = nets.actor.forward(t.state, &cache);
    CriticNetwork::Cache c_cache;
    nets.critic.forward(t.state, action, &c_cache);
    auto input_grads = nets.critic.backward(c_cache, 1.0, nullptr);
    for (double& g : input_grads.action) g *= inv_batch;
    nets.actor.backward(cache, input_grads.action, grads);
  }

  const auto objective = [&](const DenseNetwork& a) {
    double total = 0.0;
    for (std::size_t idx : indices) {
      const Transition& t = buffer.at(idx);
      total += nets.critic.forward(t.state, a.forward(t.state)) * inv_batch;
    }
    return total;
  };

  auto blocks = nets.actor.param_blocks();
  const auto fd_at = [&](std::size_t b, std::size_t i, double h) {
    double& value = (*blocks[b])[i];
    const double saved = value;
    value = saved + h;
    const double up = objective(nets.actor);
    value = saved - h;
    const double down = objective(nets.actor);
    value = saved;
    return (up - down) / (2.0 * h);
  };
  const auto close = [](double analytic, double numeric) {
    return std::abs(analytic - numeric) <=
           1e-3 * std::max({std::abs(analytic), std::abs(numeric), 1e-3});
  };
  std::size_t checked = 0;
  std::size_t failed = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b]->size(); ++i) {
      const double analytic = grads.blocks[b][i];
      bool ok = close(analytic, fd_at(b, i, 1e-5));
      if (!ok) ok = close(analytic, fd_at(b, i, 1e-6));  // re-check across ReLU kinks
      checked += 1;
      if (!ok) failed += 1;
    }
  }
  CHECK(checked > 0);
  CHECK(failed == 0);
}

TEST_CASE("soft update with tau=1 copies the policy nets") {
  Rng rng(122);
  AgentNets nets = make_agent_nets(4, 3, 5, rng);
  // Perturb the policies away from the targets first.
  for (auto* b : nets.actor.param_blocks()) {
    for (double& v : *b) v += 0.1;
  }
  soft_update_targets(nets, 1.0);
  const auto p = static_cast<const DenseNetwork&>(nets.actor).param_blocks();
  const auto t = static_cast<const DenseNetwork&>(nets.target_actor).param_blocks();
  for (std::size_t b = 0; b < p.size(); ++b) {
    for (std::size_t i = 0; i < p[b]->size(); ++i) CHECK((*p[b])[i] == (*t[b])[i]);
  }
}

TEST_CASE("soft update midpoint on a scalar view") {
  std::vector<double> target_block = {0.0};
  std::vector<double> source_block = {1.0};
  std::vector<std::vector<double>*> target = {&target_block};
  std::vector<const std::vector<double>*> source = {&source_block};
  soft_update_params(target, source, 0.5);
  CHECK(target_block[0] == doctest::Approx(0.5));
}

TEST_CASE("soft update contracts the target gap by exactly (1 - tau)") {
  Rng rng(123);
  AgentNets nets = make_agent_nets(4, 3, 5, rng);
  for (auto* b : nets.actor.param_blocks()) {
    for (double& v : *b) v += 0.25;
  }
  const double tau = 0.125;  // exactly representable
  const auto gap = [&]() {
    double sum_sq = 0.0;
    const auto p = static_cast<const DenseNetwork&>(nets.actor).param_blocks();
    const auto t = static_cast<const DenseNetwork&>(nets.target_actor).param_blocks();
    for (std::size_t b = 0; b < p.size(); ++b) {
      for (std::size_t i = 0; i < p[b]->size(); ++i) {
        const double d = (*t[b])[i] - (*p[b])[i];
        sum_sq += d * d;
      }
    }
    return std::sqrt(sum_sq);
  };
  double previous = gap();
  for (int call = 0; call < 5; ++call) {
    soft_update_targets(nets, tau);
    const double current = gap();
    CHECK(current == doctest::Approx((1.0 - tau) * previous).epsilon(1e-12));
    previous = current;
  }
}

TEST_CASE("target weights remain convex combinations of policy history") {
  // Scalar recurrence: theta'_t = tau * theta_t + (1 - tau) * theta'_{t-1}.
  std::vector<double> target_block = {0.0};
  std::vector<std::vector<double>*> target = {&target_block};
  const double tau = 0.01;
  Rng rng(124);
  double expected = 0.0;
  for (int step = 0; step < 200; ++step) {
    const double policy = rng.uniform(-1.0, 1.0);
    std::vector<double> source_block = {policy};
    std::vector<const std::vector<double>*> source = {&source_block};
    soft_update_params(target, source, tau);
    expected = tau * policy + (1.0 - tau) * expected;
    CHECK(target_block[0] == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("replay buffer FIFO eviction") {
  ReplayBuffer buffer(4);
  Rng rng(125);
  for (int i = 0; i < 6; ++i) {
    Transition t = make_transition(2, 2, static_cast<double>(i), false, rng);
    buffer.push(std::move(t));
  }
  CHECK(buffer.size() == 4);
  CHECK(buffer.capacity() == 4);
  // Oldest two (rewards 0 and 1) evicted; order preserved.
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(buffer.at(i).reward == doctest::Approx(static_cast<double>(i + 2)));
  }
  CHECK_THROWS_AS(buffer.at(4), ShapeError);
  CHECK_THROWS_AS(ReplayBuffer(0), ConfigError);
}

TEST_CASE("replay buffer sampling is uniform") {
  ReplayBuffer buffer(8);
  Rng rng(126);
  for (int i = 0; i < 8; ++i) buffer.push(make_transition(2, 2, i, false, rng));
  Rng sample_rng(127);
  std::vector<std::size_t> counts(8, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) {
    counts[buffer.sample_indices(sample_rng, 1)[0]] += 1;
  }
  const double expected = draws / 8.0;
  const double sigma = std::sqrt(draws * (1.0 / 8.0) * (7.0 / 8.0));
  for (std::size_t slot = 0; slot < 8; ++slot) {
    CHECK(std::abs(static_cast<double>(counts[slot]) - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("training smoke run") {
  Hyperparams hp;
  hp.episodes = 1;
  hp.steps_per_episode = 3;
  hp.minibatch = 1;
  hp.buffer_capacity = 8;
  hp.hidden_width = 8;
  hp.learning_rate = 1e-3;
  hp.soft_update_tau = 0.5;
  hp.eval_set_size = 2;
  hp.eval_steps = 1;
  const TrainResult result = train(tiny_env_config(), hp, 7);
  CHECK(result.log.size() == 1);
  CHECK(result.log[0].episode == 1);
  CHECK(result.best_eval_reward > 0.0);
  CHECK(result.log[0].wall_seconds == 0.0);
}

TEST_CASE("training is deterministic given the seed") {
  Hyperparams hp;
  hp.episodes = 2;
  hp.steps_per_episode = 5;
  hp.minibatch = 2;
  hp.buffer_capacity = 16;
  hp.hidden_width = 8;
  hp.learning_rate = 1e-3;
  hp.soft_update_tau = 0.1;
  hp.eval_set_size = 2;
  hp.eval_steps = 2;
  const TrainResult a = train(tiny_env_config(), hp, 42);
  const TrainResult b = train(tiny_env_config(), hp, 42);
  REQUIRE(a.log.size() == b.log.size());
  for (std::size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].mean_eval_reward == b.log[i].mean_eval_reward);
    CHECK(a.log[i].best_reward_so_far == b.log[i].best_reward_so_far);
    CHECK(a.log[i].mean_critic_loss == b.log[i].mean_critic_loss);
  }
  const auto pa = static_cast<const DenseNetwork&>(a.best_actor).param_blocks();
  const auto pb = static_cast<const DenseNetwork&>(b.best_actor).param_blocks();
  for (std::size_t blk = 0; blk < pa.size(); ++blk) {
    for (std::size_t i = 0; i < pa[blk]->size(); ++i) CHECK((*pa[blk])[i] == (*pb[blk])[i]);
  }
}

TEST_CASE("a stop request ends training after the episode in flight") {
  Hyperparams hp;
  hp.episodes = 5;
  hp.steps_per_episode = 3;
  hp.minibatch = 1;
  hp.buffer_capacity = 8;
  hp.hidden_width = 8;
  hp.eval_set_size = 2;
  hp.eval_steps = 1;
  set_training_stop(true);
  const TrainResult result = train(tiny_env_config(), hp, 9);
  set_training_stop(false);
  CHECK(result.interrupted);
  CHECK(result.log.size() == 1);  // the in-flight episode still completes
  CHECK(result.best_eval_reward > 0.0);
}

TEST_CASE("learning does not mutate the channel realization") {
  const EnvConfig cfg = tiny_env_config();
  Environment env(cfg);
  Rng env_rng(128);
  std::vector<double> state = env.reset(env_rng);

  const ChannelRealization snapshot = env.realization();

  Rng rng(129);
  AgentNets nets = make_agent_nets(env.state_dim(), env.action_dim(), 8, rng);
  AdamState adam_c = AdamState::like(
      static_cast<const CriticNetwork&>(nets.critic).param_blocks(),
      AdamParams{1e-3, 0.9, 0.999, 1e-8});
  AdamState adam_a = AdamState::like(
      static_cast<const DenseNetwork&>(nets.actor).param_blocks(),
      AdamParams{1e-3, 0.9, 0.999, 1e-8});
  ReplayBuffer buffer(16);
  Rng learn_rng(130);
  for (int t = 0; t < 8; ++t) {
    auto action = select_action(nets.actor, state, 0.1, learn_rng);
    auto step = env.step(action);
    buffer.push(Transition{state, action, step.reward, step.next_state, t == 7});
    if (buffer.size() >= 2) {
      const auto indices = buffer.sample_indices(learn_rng, 2);
      const auto targets = td_targets(nets, buffer, indices, 0.95);
      critic_update(nets, buffer, indices, targets, adam_c);
      actor_update(nets, buffer, indices, adam_a);
      soft_update_targets(nets, 0.01);
    }
    state = step.next_state;
  }

  const ChannelRealization& after = env.realization();
  REQUIRE(after.direct.size() == snapshot.direct.size());
  for (std::size_t k = 0; k < snapshot.direct.size(); ++k) {
    for (std::size_t i = 0; i < snapshot.direct[k].size(); ++i) {
      CHECK(after.direct[k].entries()[i] == snapshot.direct[k].entries()[i]);
    }
  }
  for (std::size_t l = 0; l < snapshot.bs_to_ris.size(); ++l) {
    for (std::size_t i = 0; i < snapshot.bs_to_ris[l].size(); ++i) {
      CHECK(after.bs_to_ris[l].entries()[i] == snapshot.bs_to_ris[l].entries()[i]);
    }
  }
}

TEST_CASE("updates leave the other network untouched") {
  Rng rng(131);
  AgentNets nets = make_agent_nets(6, 4, 8, rng);
  ReplayBuffer buffer(8);
  Rng t_rng(132);
  for (int i = 0; i < 4; ++i) buffer.push(make_transition(6, 4, 0.3, false, t_rng));
  const std::vector<std::size_t> indices = {0, 1, 2, 3};

  std::vector<std::vector<double>> actor_before;
  for (const auto* b : static_cast<const DenseNetwork&>(nets.actor).param_blocks()) {
    actor_before.push_back(*b);
  }
  AdamState adam_c = AdamState::like(
      static_cast<const CriticNetwork&>(nets.critic).param_blocks(), AdamParams{});
  const auto targets = td_targets(nets, buffer, indices, 0.9);
  critic_update(nets, buffer, indices, targets, adam_c);
  auto actor_after = static_cast<const DenseNetwork&>(nets.actor).param_blocks();
  for (std::size_t b = 0; b < actor_after.size(); ++b) {
    for (std::size_t i = 0; i < actor_after[b]->size(); ++i) {
      CHECK((*actor_after[b])[i] == actor_before[b][i]);
    }
  }

  std::vector<std::vector<double>> critic_before;
  for (const auto* b : static_cast<const CriticNetwork&>(nets.critic).param_blocks()) {
    critic_before.push_back(*b);
  }
  AdamState adam_a = AdamState::like(
      static_cast<const DenseNetwork&>(nets.actor).param_blocks(), AdamParams{});
  actor_update(nets, buffer, indices, adam_a);
  auto critic_after = static_cast<const CriticNetwork&>(nets.critic).param_blocks();
  for (std::size_t b = 0; b < critic_after.size(); ++b) {
    for (std::size_t i = 0; i < critic_after[b]->size(); ++i) {
      CHECK((*critic_after[b])[i] == critic_before[b][i]);
    }
  }
}

TEST_CASE("infer is deterministic and reports the closed-form MAC count") {
  Rng rng(133);
  DenseNetwork actor = build_actor(10, 6, 16, rng);
  std::vector<double> state(10, 0.2);
  const auto a = infer(actor, state);
  const auto b = infer(actor, state);
  CHECK(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  CHECK(inference_macs(actor) == 10ULL * 16 + 16ULL * 16 + 16ULL * 6);
}
