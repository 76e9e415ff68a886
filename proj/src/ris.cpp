// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/ris.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "risim/errors.hpp"

namespace risim {

void ReflectionParams::validate() const {
  if (steepness < 0.0) throw ConfigError("reflection: steepness must be >= 0");
  if (!(beta_min > 0.0) || beta_min > 1.0) {
    throw ConfigError("reflection: beta_min must be in (0, 1]");
  }
  if (theta_min > theta_max) throw ConfigError("reflection: theta_min > theta_max");
  if (theta_min < -kPi - 1e-12 || theta_max > kPi + 1e-12) {
    throw ConfigError("reflection: phase bounds must lie within [-pi, pi]");
  }
}

double reflection_amplitude(const ReflectionParams& params, double theta) {
  if (theta < params.theta_min || theta > params.theta_max) {
    throw DomainError("reflection_amplitude: theta " + std::to_string(theta) +
                      " outside [theta_min, theta_max]");
  }
  const double s = (std::sin(theta - params.phase_offset) + 1.0) / 2.0;
  return (1.0 - params.beta_min) * std::pow(s, params.steepness) + params.beta_min;
}

cplx clamp_merge(const ReflectionParams& params, double theta) {
  const double clamped = std::clamp(theta, params.theta_min, params.theta_max);
  const cplx phase{std::cos(clamped), std::sin(clamped)};
  if (params.mode == ReflectionMode::ideal) return phase;
  return reflection_amplitude(params, clamped) * phase;
}

std::vector<cplx> build_reflection_matrix(const ReflectionParams& params,
                                          std::span<const double> phases,
                                          std::size_t num_elements) {
  if (phases.size() != num_elements) {
    throw ShapeError("build_reflection_matrix: got " + std::to_string(phases.size()) +
                     " phases for " + std::to_string(num_elements) + " elements");
  }
  std::vector<cplx> diag(num_elements);
  for (std::size_t n = 0; n < num_elements; ++n) diag[n] = clamp_merge(params, phases[n]);
  return diag;
}

}  // namespace risim
