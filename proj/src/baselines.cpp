// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/baselines.hpp"

#include <cmath>
#include <cstdint>

#include "risim/errors.hpp"

namespace risim {

namespace {

std::vector<std::vector<double>> draw_random_phases(Rng& rng, const ReflectionParams& reflection,
                                                    std::size_t num_ris, std::size_t elements) {
  std::vector<std::vector<double>> phases(num_ris, std::vector<double>(elements));
  for (auto& surface : phases) {
    for (double& theta : surface) {
      theta = rng.uniform(reflection.theta_min, reflection.theta_max);
    }
  }
  return phases;
}

}  // namespace

BaselineResult random_baseline(Rng& rng, const Environment& env) {
  std::vector<double> raw(env.action_dim());
  for (double& a : raw) a = rng.uniform(-1.0, 1.0);
  const FeasiblePoint point = env.project(raw);
  const Environment::Evaluation eval = env.evaluate(point);
  return BaselineResult{eval.reward, eval.rates, false};
}

BaselineResult zf_baseline(Rng& rng, const Environment& env) {
  const ActionLayout& layout = env.layout();
  const EnvConfig& cfg = env.config();

  FeasiblePoint point;
  point.phases = draw_random_phases(rng, cfg.reflection, layout.num_ris, layout.elements);
  point.reflections.resize(layout.num_ris);
  for (std::size_t l = 0; l < layout.num_ris; ++l) {
    point.reflections[l] =
        build_reflection_matrix(cfg.reflection, point.phases[l], layout.elements);
  }

  const auto rows = effective_channel(env.realization(), point.reflections);
  const auto presence = env.presence();
  std::vector<std::size_t> active;
  for (std::size_t k = 0; k < presence.size(); ++k) {
    if (presence[k]) active.push_back(k);
  }
  if (active.empty()) throw ConfigError("zf_baseline: no UE present");

  const std::size_t num_active = active.size();
  const std::size_t antennas = layout.bs_antennas;
  bool fallback = num_active > antennas;

  point.precoder = ComplexMatrix(antennas, layout.ue_slots);
  const double per_user_power = cfg.max_power_w / static_cast<double>(num_active);

  if (!fallback) {
    // Stack the active effective rows and take the right pseudo-inverse;
    // column j of H^H (H H^H)^-1 nulls every other active UE.
    ComplexMatrix stacked(num_active, antennas);
    for (std::size_t j = 0; j < num_active; ++j) {
      const ComplexMatrix& h = rows[active[j]];
      for (std::size_t m = 0; m < antennas; ++m) stacked(j, m) = h(0, m);
    }
    const auto pinv = right_pseudo_inverse(stacked);
    if (!pinv) {
      fallback = true;
    } else {
      for (std::size_t j = 0; j < num_active; ++j) {
        double norm_sq = 0.0;
        for (std::size_t m = 0; m < antennas; ++m) norm_sq += std::norm((*pinv)(m, j));
        const double norm = std::sqrt(norm_sq);
        if (norm == 0.0) {
          fallback = true;
          break;
        }
        const double scale = std::sqrt(per_user_power) / norm;
        for (std::size_t m = 0; m < antennas; ++m) {
          point.precoder(m, active[j]) = (*pinv)(m, j) * scale;
        }
      }
    }
  }

  if (fallback) {
    // Matched filter per user: w_k aligned with h_k^H.
    for (std::size_t j = 0; j < num_active; ++j) {
      const ComplexMatrix& h = rows[active[j]];
      double norm_sq = 0.0;
      for (std::size_t m = 0; m < antennas; ++m) norm_sq += std::norm(h(0, m));
      const double norm = std::sqrt(norm_sq);
      if (norm == 0.0) continue;
      const double scale = std::sqrt(per_user_power) / norm;
      for (std::size_t m = 0; m < antennas; ++m) {
        point.precoder(m, active[j]) = std::conj(h(0, m)) * scale;
      }
    }
  }

  const Environment::Evaluation eval = env.evaluate(point);
  return BaselineResult{eval.reward, eval.rates, fallback};
}

}  // namespace risim
