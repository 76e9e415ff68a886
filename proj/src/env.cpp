// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/env.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "risim/errors.hpp"

namespace risim {

void NoiseModel::validate() const {
  if (!(power_w > 0.0)) throw ConfigError("noise: power must be positive");
}

void UePolicy::validate(const Topology& topology) const {
  const std::size_t min_slots =
      *std::min_element(topology.ue_slots_per_ris.begin(), topology.ue_slots_per_ris.end());
  if (mode == Mode::fixed) {
    if (fixed_per_ris < 1 || fixed_per_ris > min_slots) {
      throw ConfigError("ue policy: fixed_per_ris must be in [1, slots per RIS]");
    }
  } else {
    if (min_per_ris < 1 || min_per_ris > max_per_ris || max_per_ris > min_slots) {
      throw ConfigError("ue policy: need 1 <= min_per_ris <= max_per_ris <= slots per RIS");
    }
  }
}

ActionLayout EnvConfig::layout() const {
  return ActionLayout{topology.num_bs_antennas, topology.total_ue_slots(), topology.num_ris,
                      topology.elements_per_ris()};
}

void EnvConfig::validate() const {
  topology.validate();
  channel.validate();
  reflection.validate();
  noise.validate();
  ue.validate(topology);
  if (!(max_power_w > 0.0)) throw ConfigError("env: max power must be positive");
}

FeasiblePoint project_action(std::span<const double> raw,
                             std::span<const std::uint8_t> presence, double max_power_w,
                             const ReflectionParams& reflection, const ActionLayout& layout) {
  if (raw.size() != layout.action_dim()) {
    throw ShapeError("project_action: raw action length " + std::to_string(raw.size()) +
                     ", layout expects " + std::to_string(layout.action_dim()));
  }
  if (presence.size() != layout.ue_slots) {
    throw ShapeError("project_action: presence length mismatch");
  }
  bool any_present = false;
  for (std::uint8_t u : presence) any_present |= (u != 0);
  if (!any_present) throw ConfigError("project_action: no UE present");

  FeasiblePoint point;
  point.precoder = ComplexMatrix(layout.bs_antennas, layout.ue_slots);
  for (std::size_t k = 0; k < layout.ue_slots; ++k) {
    if (!presence[k]) continue;  // w_k <- u_k w_k
    for (std::size_t m = 0; m < layout.bs_antennas; ++m) {
      point.precoder(m, k) = {raw[layout.re_precoder(k, m)], raw[layout.im_precoder(k, m)]};
    }
  }
  const double norm = frobenius_norm(point.precoder);
  if (norm > 0.0) {
    const double factor = std::sqrt(max_power_w) / norm;
    for (cplx& e : point.precoder.entries()) e *= factor;
  }

  point.phases.resize(layout.num_ris);
  point.reflections.resize(layout.num_ris);
  for (std::size_t l = 0; l < layout.num_ris; ++l) {
    point.phases[l].resize(layout.elements);
    for (std::size_t n = 0; n < layout.elements; ++n) {
      const double re = raw[layout.re_phase(l, n)];
      const double im = raw[layout.im_phase(l, n)];
      // atan2 of the normalized carrier z/|z|; a zero carrier decodes to 0.
      const double theta = (re == 0.0 && im == 0.0) ? 0.0 : std::atan2(im, re);
      point.phases[l][n] = std::clamp(theta, reflection.theta_min, reflection.theta_max);
    }
    point.reflections[l] = build_reflection_matrix(reflection, point.phases[l], layout.elements);
  }
  return point;
}

std::vector<double> encode_action(const ComplexMatrix& precoder,
                                  const std::vector<std::vector<double>>& phases,
                                  const ActionLayout& layout) {
  if (precoder.rows() != layout.bs_antennas || precoder.cols() != layout.ue_slots) {
    throw ShapeError("encode_action: precoder shape mismatch");
  }
  if (phases.size() != layout.num_ris) throw ShapeError("encode_action: phase list mismatch");
  std::vector<double> raw(layout.action_dim(), 0.0);
  for (std::size_t k = 0; k < layout.ue_slots; ++k) {
    for (std::size_t m = 0; m < layout.bs_antennas; ++m) {
      raw[layout.re_precoder(k, m)] = precoder(m, k).real();
      raw[layout.im_precoder(k, m)] = precoder(m, k).imag();
    }
  }
  for (std::size_t l = 0; l < layout.num_ris; ++l) {
    if (phases[l].size() != layout.elements) throw ShapeError("encode_action: phase row mismatch");
    for (std::size_t n = 0; n < layout.elements; ++n) {
      raw[layout.re_phase(l, n)] = std::cos(phases[l][n]);
      raw[layout.im_phase(l, n)] = std::sin(phases[l][n]);
    }
  }
  return raw;
}

std::vector<double> per_ue_rate(const std::vector<ComplexMatrix>& effective_rows,
                                const ComplexMatrix& precoder, double noise_power_w,
                                std::span<const std::uint8_t> presence) {
  const std::size_t total = effective_rows.size();
  if (precoder.cols() != total || presence.size() != total) {
    throw ShapeError("per_ue_rate: UE count mismatch");
  }
  if (!(noise_power_w > 0.0)) throw DomainError("per_ue_rate: noise power must be positive");

  // |h_k w_i|^2 for every present pair.
  std::vector<double> rates(total, 0.0);
  for (std::size_t k = 0; k < total; ++k) {
    if (!presence[k]) continue;
    const ComplexMatrix& h = effective_rows[k];
    if (h.rows() != 1 || h.cols() != precoder.rows()) {
      throw ShapeError("per_ue_rate: effective row shape mismatch");
    }
    double signal = 0.0;
    double interference = 0.0;
    for (std::size_t i = 0; i < total; ++i) {
      if (!presence[i]) continue;
      cplx dot{0.0, 0.0};
      for (std::size_t m = 0; m < precoder.rows(); ++m) dot += h(0, m) * precoder(m, i);
      const double power = std::norm(dot);
      if (i == k) {
        signal = power;
      } else {
        interference += power;
      }
    }
    rates[k] = std::log2(1.0 + signal / (interference + noise_power_w));
  }
  return rates;
}

double sum_rate(std::span<const double> rates) {
  double total = 0.0;
  for (double r : rates) total += r;
  return total;
}

Environment::Environment(EnvConfig config) : cfg_(std::move(config)), layout_(cfg_.layout()) {
  cfg_.validate();
}

std::vector<double> Environment::reset(Rng& rng) {
  // Presence: g_l slots active per RIS, leading slots first within each block.
  presence_.assign(layout_.ue_slots, 0);
  std::size_t block_start = 0;
  for (std::size_t l = 0; l < cfg_.topology.num_ris; ++l) {
    const std::size_t slots = cfg_.topology.ue_slots_per_ris[l];
    std::size_t active = cfg_.ue.mode == UePolicy::Mode::fixed
                             ? cfg_.ue.fixed_per_ris
                             : rng.uniform_int(cfg_.ue.min_per_ris, cfg_.ue.max_per_ris);
    active = std::min(active, slots);
    for (std::size_t j = 0; j < active; ++j) presence_[block_start + j] = 1;
    block_start += slots;
  }

  realization_ = draw_channel_realization(rng, cfg_.topology, cfg_.channel);
  initialized_ = true;

  std::vector<double> action(layout_.action_dim());
  for (double& a : action) a = rng.uniform(-1.0, 1.0);
  const FeasiblePoint point = project(action);
  const Evaluation eval = evaluate(point);
  return make_state(action, eval.rates);
}

Environment::StepResult Environment::step(std::span<const double> action) {
  require_initialized();
  const FeasiblePoint point = project(action);
  const Evaluation eval = evaluate(point);
  StepResult result;
  result.reward = eval.reward;
  result.rates = eval.rates;
  result.next_state = make_state(action, eval.rates);
  return result;
}

Environment::Evaluation Environment::evaluate(const FeasiblePoint& point) const {
  require_initialized();
  const auto rows = effective_channel(realization_, point.reflections);
  Evaluation eval;
  eval.rates = per_ue_rate(rows, point.precoder, cfg_.noise.power_w, presence_);
  eval.reward = sum_rate(eval.rates);
  return eval;
}

FeasiblePoint Environment::project(std::span<const double> raw) const {
  require_initialized();
  return project_action(raw, presence_, cfg_.max_power_w, cfg_.reflection, layout_);
}

const ChannelRealization& Environment::realization() const {
  require_initialized();
  return realization_;
}

std::vector<double> Environment::make_state(std::span<const double> action,
                                            std::span<const double> rates) const {
  std::vector<double> state;
  state.reserve(layout_.state_dim());
  for (std::uint8_t u : presence_) state.push_back(static_cast<double>(u));
  state.insert(state.end(), action.begin(), action.end());
  state.insert(state.end(), rates.begin(), rates.end());
  return state;
}

void Environment::require_initialized() const {
  if (!initialized_) throw StateError("environment: reset must be called before use");
}

}  // namespace risim
