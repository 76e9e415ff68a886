// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_BASELINES_HPP
#define RISIM_BASELINES_HPP

#include <vector>

#include "risim/env.hpp"
#include "risim/rng.hpp"

namespace risim {

struct BaselineResult {
  double reward = 0.0;
  std::vector<double> rates;
  bool zf_fallback = false;  // matched filter used because ZF was not solvable
};

// Uniform random raw action, projected and evaluated on the environment's
// current realization.
BaselineResult random_baseline(Rng& rng, const Environment& env);

// Random feasible RIS phases plus a zero-forcing precoder on the resulting
// effective channels. ZF directions are normalized per user and scaled to an
// equal power split meeting the budget with equality. Falls back to matched
// filtering when more UEs than antennas are present or the Gram matrix is
// singular.
BaselineResult zf_baseline(Rng& rng, const Environment& env);

}  // namespace risim

#endif
