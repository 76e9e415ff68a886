// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#ifndef RISIM_NEURAL_HPP
#define RISIM_NEURAL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "risim/rng.hpp"

namespace risim {

enum class Activation : std::uint8_t { none = 0, relu = 1, tanh = 2 };

struct LayerSpec {
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  Activation activation = Activation::none;
  bool normalize = false;  // layer normalization between the affine map and the activation
};

inline constexpr double kLayerNormEpsilon = 1e-12;

// Gradient (or moment) storage mirroring a network's parameter blocks.
struct GradBlocks {
  std::vector<std::vector<double>> blocks;
  void zero();
};

// Fully connected chain: per layer affine -> optional layer norm -> activation.
// Parameters per layer, in block order: weight (out x in, row-major), bias,
// then gain and offset when normalize is set.
class DenseNetwork {
 public:
  DenseNetwork() = default;

  // Weights initialized uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)]; when
  // final_layer_init > 0 the last layer's weight and bias use that half-width
  // instead (keeps initial outputs small ahead of a bounded activation).
  DenseNetwork(std::vector<LayerSpec> specs, Rng& rng, double final_layer_init = 0.0);

  struct LayerCache {
    std::vector<double> input;
    std::vector<double> affine;    // W x + b
    std::vector<double> xhat;      // normalized pre-activation (normalize only)
    double inv_std = 0.0;
    std::vector<double> normed;    // gain * xhat + offset, or affine when not normalized
    std::vector<double> output;    // after activation
  };
  struct Cache {
    std::vector<LayerCache> layers;
  };

  std::vector<double> forward(std::span<const double> input, Cache* cache = nullptr) const;

  // Exact reverse-mode gradients; accumulates parameter gradients into grads
  // and returns the gradient with respect to the input. Throws StateError if
  // the cache does not match this network's layer shapes.
  std::vector<double> backward(const Cache& cache, std::span<const double> output_grad,
                               GradBlocks& grads) const;

  GradBlocks make_grads() const;
  std::vector<std::vector<double>*> param_blocks();
  std::vector<const std::vector<double>*> param_blocks() const;

  const std::vector<LayerSpec>& specs() const { return specs_; }
  std::size_t input_dim() const { return specs_.empty() ? 0 : specs_.front().input_dim; }
  std::size_t output_dim() const { return specs_.empty() ? 0 : specs_.back().output_dim; }
  std::size_t parameter_count() const;

 private:
  friend class NetworkCodec;

  struct Layer {
    LayerSpec spec;
    std::vector<double> weight, bias, gain, offset;
  };
  std::vector<Layer> layers_;
  std::vector<LayerSpec> specs_;
};

// Q network with split state/action input branches: both branches map
// affinely to the hidden width and are combined by elementwise addition, then
// layer norm + ReLU, one hidden layer (affine + layer norm + ReLU), and a
// scalar affine output. Block order: state weight/bias, action weight/bias,
// combine gain/offset, hidden weight/bias/gain/offset, output weight/bias.
class CriticNetwork {
 public:
  CriticNetwork() = default;
  CriticNetwork(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim, Rng& rng);

  struct Cache {
    std::vector<double> state, action;
    std::vector<double> combined;           // W_s s + b_s + W_a a + b_a
    std::vector<double> xhat1, h1;          // post-norm, post-ReLU
    double inv_std1 = 0.0;
    std::vector<double> affine2, xhat2, h2;
    double inv_std2 = 0.0;
  };

  double forward(std::span<const double> state, std::span<const double> action,
                 Cache* cache = nullptr) const;

  struct InputGrads {
    std::vector<double> state, action;
  };

  // Reverse pass from a scalar q gradient. Parameter gradients are
  // accumulated only when grads is non-null (pass nullptr to obtain input
  // gradients while leaving the critic untouched).
  InputGrads backward(const Cache& cache, double q_grad, GradBlocks* grads) const;

  GradBlocks make_grads() const;
  std::vector<std::vector<double>*> param_blocks();
  std::vector<const std::vector<double>*> param_blocks() const;

  std::size_t state_dim() const { return state_dim_; }
  std::size_t action_dim() const { return action_dim_; }
  std::size_t hidden_dim() const { return hidden_dim_; }
  std::size_t parameter_count() const;

 private:
  friend class NetworkCodec;

  std::size_t state_dim_ = 0, action_dim_ = 0, hidden_dim_ = 0;
  std::vector<double> w_state_, b_state_, w_action_, b_action_;
  std::vector<double> gain1_, offset1_;
  std::vector<double> w_hidden_, b_hidden_, gain2_, offset2_;
  std::vector<double> w_out_, b_out_;
};

struct AdamParams {
  double learning_rate = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  AdamParams hyper;
  std::vector<std::vector<double>> first_moment, second_moment;
  std::uint64_t step = 0;

  static AdamState like(const std::vector<const std::vector<double>*>& params, AdamParams hyper);
};

// Bias-corrected Adam update in place; shapes of params, grads and state must
// agree.
void adam_step(const std::vector<std::vector<double>*>& params, const GradBlocks& grads,
               AdamState& state);

// theta_target <- tau * theta_source + (1 - tau) * theta_target.
void soft_update_params(const std::vector<std::vector<double>*>& target,
                        const std::vector<const std::vector<double>*>& source, double tau);

// Actor: input -> hidden (norm+ReLU) -> hidden (norm+ReLU) -> output (norm+tanh),
// final layer initialized in [-3e-3, 3e-3].
DenseNetwork build_actor(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim,
                         Rng& rng);

CriticNetwork build_critic(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim,
                           Rng& rng);

// Multiply-accumulate count of one forward pass (sum of in*out over affine
// maps; biases, normalization and activations excluded).
std::uint64_t inference_macs(const DenseNetwork& net);

// Floating-point operation estimate of one forward pass: 2*in*out + out per
// affine map (multiply+add plus bias), 7*features per layer norm, and
// 1*features per nontrivial activation.
std::uint64_t inference_flops(const DenseNetwork& net);

// Checkpoint container for one actor/critic pair.
//
// Binary layout (little-endian):
//   magic "RSNW", u32 version = 1
//   actor:  u32 layer count, then per layer u64 in, u64 out, u8 activation, u8 normalize
//   critic: u64 state_dim, u64 action_dim, u64 hidden_dim
//   per network (actor then critic): u32 block count, then per block
//     u64 length followed by length f64 values
// Values are written as raw IEEE-754 doubles, so checkpoints round-trip
// bit-exactly.
struct Checkpoint {
  DenseNetwork actor;
  CriticNetwork critic;
};

void save_checkpoint(const std::string& path, const DenseNetwork& actor,
                     const CriticNetwork& critic);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace risim

#endif
