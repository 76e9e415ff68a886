// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_ENV_HPP
#define RISIM_ENV_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "risim/channel.hpp"
#include "risim/complexlin.hpp"
#include "risim/ris.hpp"
#include "risim/rng.hpp"
#include "risim/units.hpp"

namespace risim {

// Flat real encodings of the optimization variables.
//
// Action (length 2*(M*K + L*N)):
//   [ Re w_1 .. Re w_K | Im w_1 .. Im w_K | Re z_1,1 .. Re z_L,N | Im z_1,1 .. Im z_L,N ]
// where column w_k occupies M consecutive entries and z_l,n is the complex
// carrier of the phase decision for element n of RIS l.
//
// State (length 2*(M*K + L*N + K)):
//   [ u_1 .. u_K | previous action | previous per-UE rates ]
struct ActionLayout {
  std::size_t bs_antennas = 0;  // M
  std::size_t ue_slots = 0;     // K
  std::size_t num_ris = 0;      // L
  std::size_t elements = 0;     // N

  std::size_t precoder_terms() const { return bs_antennas * ue_slots; }
  std::size_t phase_terms() const { return num_ris * elements; }
  std::size_t action_dim() const { return 2 * (precoder_terms() + phase_terms()); }
  std::size_t state_dim() const { return action_dim() + 2 * ue_slots; }

  std::size_t re_precoder(std::size_t ue, std::size_t antenna) const {
    return ue * bs_antennas + antenna;
  }
  std::size_t im_precoder(std::size_t ue, std::size_t antenna) const {
    return precoder_terms() + ue * bs_antennas + antenna;
  }
  std::size_t re_phase(std::size_t ris, std::size_t element) const {
    return 2 * precoder_terms() + ris * elements + element;
  }
  std::size_t im_phase(std::size_t ris, std::size_t element) const {
    return 2 * precoder_terms() + phase_terms() + ris * elements + element;
  }
};

struct NoiseModel {
  double power_w = dbm_to_watts(-94.0);  // sigma^2, linear watts
  void validate() const;
};

// Per-episode draw of how many UEs are present at each RIS.
struct UePolicy {
  enum class Mode { fixed, random };
  Mode mode = Mode::random;
  std::size_t fixed_per_ris = 2;
  std::size_t min_per_ris = 1;
  std::size_t max_per_ris = 4;

  void validate(const Topology& topology) const;
};

struct EnvConfig {
  Topology topology;
  ChannelParams channel;
  ReflectionParams reflection;
  NoiseModel noise;
  double max_power_w = dbm_to_watts(20.0);
  UePolicy ue;

  ActionLayout layout() const;
  void validate() const;
};

// A precoder/phase pair satisfying the power and phase-bound constraints.
struct FeasiblePoint {
  ComplexMatrix precoder;                      // M x K, absent-UE columns zero
  std::vector<std::vector<double>> phases;      // L x N clamped radians
  std::vector<std::vector<cplx>> reflections;   // L x N coefficients
};

// Projects a raw action onto the feasible set: reassembles the complex
// precoder, zeroes absent-UE columns, rescales to Frobenius norm
// sqrt(max_power_w) (a zero precoder passes through unscaled), decodes each
// phase as atan2 of its normalized complex carrier, and clamp-merges into
// reflection coefficients.
FeasiblePoint project_action(std::span<const double> raw,
                             std::span<const std::uint8_t> presence, double max_power_w,
                             const ReflectionParams& reflection, const ActionLayout& layout);

// Inverse packing of a feasible point into the flat action layout (phases are
// encoded as unit complex carriers).
std::vector<double> encode_action(const ComplexMatrix& precoder,
                                  const std::vector<std::vector<double>>& phases,
                                  const ActionLayout& layout);

// Per-UE achievable rates log2(1 + SINR_k) in bps/Hz; absent UEs get rate 0
// and are excluded from interference sums.
std::vector<double> per_ue_rate(const std::vector<ComplexMatrix>& effective_rows,
                                const ComplexMatrix& precoder, double noise_power_w,
                                std::span<const std::uint8_t> presence);

// Scalar reward: the sum rate.
double sum_rate(std::span<const double> rates);

// The decision process: a channel realization and UE presence pattern drawn
// at reset and held static, with actions projected and scored each step.
class Environment {
 public:
  explicit Environment(EnvConfig config);

  // Draws presence, a channel realization, and a random initial action;
  // returns the initial state {presence, action, rates}.
  std::vector<double> reset(Rng& rng);

  struct StepResult {
    std::vector<double> next_state;
    double reward = 0.0;
    std::vector<double> rates;
  };

  // Projects and evaluates one action; throws StateError before reset.
  StepResult step(std::span<const double> action);

  struct Evaluation {
    double reward = 0.0;
    std::vector<double> rates;
  };

  // Evaluates an already-feasible point on the current realization.
  Evaluation evaluate(const FeasiblePoint& point) const;

  // Projection with this environment's presence pattern.
  FeasiblePoint project(std::span<const double> raw) const;

  const EnvConfig& config() const { return cfg_; }
  const ActionLayout& layout() const { return layout_; }
  std::size_t state_dim() const { return layout_.state_dim(); }
  std::size_t action_dim() const { return layout_.action_dim(); }
  bool initialized() const { return initialized_; }
  std::span<const std::uint8_t> presence() const { return presence_; }
  const ChannelRealization& realization() const;

 private:
  std::vector<double> make_state(std::span<const double> action,
                                 std::span<const double> rates) const;
  void require_initialized() const;

  EnvConfig cfg_;
  ActionLayout layout_;
  std::vector<std::uint8_t> presence_;
  ChannelRealization realization_;
  bool initialized_ = false;
};

}  // namespace risim

#endif
