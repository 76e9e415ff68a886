// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_RIS_HPP
#define RISIM_RIS_HPP

#include <span>
#include <vector>

#include "risim/complexlin.hpp"
#include "risim/units.hpp"

namespace risim {

enum class ReflectionMode { ideal, practical };

// Coupled amplitude-phase response of one reflective element. In practical
// mode the reflection amplitude dips to beta_min at phase phase_offset - pi/2
// instead of staying at 1; steepness 0 recovers the ideal unit amplitude.
struct ReflectionParams {
  double steepness = 1.6;   // >= 0
  double beta_min = 0.2;    // in (0, 1]
  double phase_offset = 0.43 * kPi;
  double theta_min = -kPi;  // hardware phase bounds, within [-pi, pi]
  double theta_max = kPi;
  ReflectionMode mode = ReflectionMode::practical;

  void validate() const;  // throws ConfigError
};

// Amplitude response beta(theta) = (1 - beta_min)*((sin(theta - phase_offset)
// + 1)/2)^steepness + beta_min. Throws DomainError when theta is outside
// [theta_min, theta_max]; callers are expected to clamp first.
double reflection_amplitude(const ReflectionParams& params, double theta);

// Clamps theta into [theta_min, theta_max] and returns the complex reflection
// coefficient: beta(theta)*exp(j*theta) in practical mode, exp(j*theta) in
// ideal mode.
cplx clamp_merge(const ReflectionParams& params, double theta);

// Element-wise clamp_merge over one surface; phases.size() must equal
// num_elements (ShapeError otherwise). Returned vector is the diagonal of the
// reflection response matrix.
std::vector<cplx> build_reflection_matrix(const ReflectionParams& params,
                                          std::span<const double> phases,
                                          std::size_t num_elements);

}  // namespace risim

#endif
