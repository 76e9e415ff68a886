// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 risim contributors

#include "risim/neural.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <string>
#include <utility>

#include "risim/errors.hpp"

namespace risim {

namespace {

void affine_forward(std::span<const double> weight, std::span<const double> bias,
                    std::span<const double> input, std::span<double> out) {
  const std::size_t in_dim = input.size();
  const std::size_t out_dim = out.size();
  for (std::size_t o = 0; o < out_dim; ++o) {
    const double* row = weight.data() + o * in_dim;
    double sum = bias[o];
    for (std::size_t i = 0; i < in_dim; ++i) sum += row[i] * input[i];
    out[o] = sum;
  }
}

// d_input, d_weight, d_bias accumulate; d_input may be empty to skip it.
void affine_backward(std::span<const double> weight, std::span<const double> input,
                     std::span<const double> out_grad, std::span<double> d_input,
                     std::span<double> d_weight, std::span<double> d_bias) {
  const std::size_t in_dim = input.size();
  const std::size_t out_dim = out_grad.size();
  for (std::size_t o = 0; o < out_dim; ++o) {
    const double g = out_grad[o];
    if (g == 0.0) continue;
    const double* row = weight.data() + o * in_dim;
    double* wrow = d_weight.empty() ? nullptr : d_weight.data() + o * in_dim;
    if (!d_bias.empty()) d_bias[o] += g;
    for (std::size_t i = 0; i < in_dim; ++i) {
      if (wrow) wrow[i] += g * input[i];
      if (!d_input.empty()) d_input[i] += g * row[i];
    }
  }
}

// Normalizes z in place into xhat and returns 1/sqrt(var + eps).
double layer_norm_forward(std::span<const double> z, std::span<double> xhat) {
  const std::size_t n = z.size();
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : z) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n);
  const double inv_std = 1.0 / std::sqrt(var + kLayerNormEpsilon);
  for (std::size_t i = 0; i < n; ++i) xhat[i] = (z[i] - mean) * inv_std;
  return inv_std;
}

// Backward through xhat = (z - mean)/std given dxhat.
void layer_norm_backward(std::span<const double> xhat, double inv_std,
                         std::span<const double> d_xhat, std::span<double> d_z) {
  const std::size_t n = xhat.size();
  double m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m1 += d_xhat[i];
    m2 += d_xhat[i] * xhat[i];
  }
  m1 /= static_cast<double>(n);
  m2 /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    d_z[i] = inv_std * (d_xhat[i] - m1 - xhat[i] * m2);
  }
}

void apply_activation(Activation act, std::span<double> values) {
  switch (act) {
    case Activation::none:
      break;
    case Activation::relu:
      for (double& v : values) v = v > 0.0 ? v : 0.0;
      break;
    case Activation::tanh:
      for (double& v : values) v = std::tanh(v);
      break;
  }
}

// dy -> dx given the activation OUTPUT (relu output shares the input's sign;
// tanh' = 1 - out^2).
void activation_backward(Activation act, std::span<const double> output,
                         std::span<double> grad) {
  switch (act) {
    case Activation::none:
      break;
    case Activation::relu:
      for (std::size_t i = 0; i < output.size(); ++i) {
        if (output[i] <= 0.0) grad[i] = 0.0;
      }
      break;
    case Activation::tanh:
      for (std::size_t i = 0; i < output.size(); ++i) {
        grad[i] *= 1.0 - output[i] * output[i];
      }
      break;
  }
}

void init_uniform(std::vector<double>& values, double half_width, Rng& rng) {
  for (double& v : values) v = rng.uniform(-half_width, half_width);
}

}  // namespace

void GradBlocks::zero() {
  for (auto& b : blocks) std::fill(b.begin(), b.end(), 0.0);
}

DenseNetwork::DenseNetwork(std::vector<LayerSpec> specs, Rng& rng, double final_layer_init)
    : specs_(std::move(specs)) {
  if (specs_.empty()) throw ConfigError("dense network: need at least one layer");
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const LayerSpec& s = specs_[i];
    if (s.input_dim < 1 || s.output_dim < 1) {
      throw ConfigError("dense network: layer dims must be >= 1");
    }
    if (i > 0 && s.input_dim != specs_[i - 1].output_dim) {
      throw ConfigError("dense network: layer " + std::to_string(i) + " input dim mismatch");
    }
    Layer layer;
    layer.spec = s;
    layer.weight.resize(s.output_dim * s.input_dim);
    layer.bias.resize(s.output_dim);
    const bool last = (i + 1 == specs_.size());
    const double half_width = (last && final_layer_init > 0.0)
                                  ? final_layer_init
                                  : 1.0 / std::sqrt(static_cast<double>(s.input_dim));
    init_uniform(layer.weight, half_width, rng);
    init_uniform(layer.bias, half_width, rng);
    if (s.normalize) {
      layer.gain.assign(s.output_dim, 1.0);
      layer.offset.assign(s.output_dim, 0.0);
    }
    layers_.push_back(std::move(layer));
  }
}

std::vector<double> DenseNetwork::forward(std::span<const double> input, Cache* cache) const {
  if (layers_.empty()) throw StateError("dense network: not built");
  if (input.size() != input_dim()) {
    throw ShapeError("dense network: input length " + std::to_string(input.size()) +
                     ", expected " + std::to_string(input_dim()));
  }
  if (cache) cache->layers.assign(layers_.size(), LayerCache{});

  std::vector<double> current(input.begin(), input.end());
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& layer = layers_[i];
    std::vector<double> affine(layer.spec.output_dim);
    affine_forward(layer.weight, layer.bias, current, affine);

    std::vector<double> normed;
    std::vector<double> xhat;
    double inv_std = 0.0;
    if (layer.spec.normalize) {
      xhat.resize(affine.size());
      inv_std = layer_norm_forward(affine, xhat);
      normed.resize(affine.size());
      for (std::size_t j = 0; j < affine.size(); ++j) {
        normed[j] = layer.gain[j] * xhat[j] + layer.offset[j];
      }
    } else {
      normed = affine;
    }

    std::vector<double> output = normed;
    apply_activation(layer.spec.activation, output);

    if (cache) {
      LayerCache& lc = cache->layers[i];
      lc.input = std::move(current);
      lc.affine = std::move(affine);
      lc.xhat = std::move(xhat);
      lc.inv_std = inv_std;
      lc.normed = std::move(normed);
      lc.output = output;
    }
    current = std::move(output);
  }
  return current;
}

std::vector<double> DenseNetwork::backward(const Cache& cache, std::span<const double> output_grad,
                                           GradBlocks& grads) const {
  if (cache.layers.size() != layers_.size()) {
    throw StateError("dense network: cache does not match network depth");
  }
  if (output_grad.size() != output_dim()) {
    throw ShapeError("dense network: output gradient length mismatch");
  }

  // Block offsets per layer (weight, bias[, gain, offset]).
  std::vector<std::size_t> offsets(layers_.size());
  std::size_t cursor = 0;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    offsets[i] = cursor;
    cursor += layers_[i].spec.normalize ? 4 : 2;
  }
  if (grads.blocks.size() != cursor) {
    throw StateError("dense network: gradient blocks do not match network");
  }

  std::vector<double> grad(output_grad.begin(), output_grad.end());
  for (std::size_t idx = layers_.size(); idx-- > 0;) {
    const Layer& layer = layers_[idx];
    const LayerCache& lc = cache.layers[idx];
    if (lc.input.size() != layer.spec.input_dim || lc.output.size() != layer.spec.output_dim) {
      throw StateError("dense network: cache layer " + std::to_string(idx) + " shape mismatch");
    }

    activation_backward(layer.spec.activation, lc.output, grad);

    std::vector<double> d_affine;
    if (layer.spec.normalize) {
      std::vector<double>& d_gain = grads.blocks[offsets[idx] + 2];
      std::vector<double>& d_offset = grads.blocks[offsets[idx] + 3];
      std::vector<double> d_xhat(grad.size());
      for (std::size_t j = 0; j < grad.size(); ++j) {
        d_gain[j] += grad[j] * lc.xhat[j];
        d_offset[j] += grad[j];
        d_xhat[j] = grad[j] * layer.gain[j];
      }
      d_affine.resize(grad.size());
      layer_norm_backward(lc.xhat, lc.inv_std, d_xhat, d_affine);
    } else {
      d_affine = std::move(grad);
    }

    std::vector<double> d_input(layer.spec.input_dim, 0.0);
    affine_backward(layer.weight, lc.input, d_affine, d_input, grads.blocks[offsets[idx]],
                    grads.blocks[offsets[idx] + 1]);
    grad = std::move(d_input);
  }
  return grad;
}

GradBlocks DenseNetwork::make_grads() const {
  GradBlocks g;
  for (const Layer& layer : layers_) {
    g.blocks.emplace_back(layer.weight.size(), 0.0);
    g.blocks.emplace_back(layer.bias.size(), 0.0);
    if (layer.spec.normalize) {
      g.blocks.emplace_back(layer.gain.size(), 0.0);
      g.blocks.emplace_back(layer.offset.size(), 0.0);
    }
  }
  return g;
}

std::vector<std::vector<double>*> DenseNetwork::param_blocks() {
  std::vector<std::vector<double>*> blocks;
  for (Layer& layer : layers_) {
    blocks.push_back(&layer.weight);
    blocks.push_back(&layer.bias);
    if (layer.spec.normalize) {
      blocks.push_back(&layer.gain);
      blocks.push_back(&layer.offset);
    }
  }
  return blocks;
}

std::vector<const std::vector<double>*> DenseNetwork::param_blocks() const {
  std::vector<const std::vector<double>*> blocks;
  for (const Layer& layer : layers_) {
    blocks.push_back(&layer.weight);
    blocks.push_back(&layer.bias);
    if (layer.spec.normalize) {
      blocks.push_back(&layer.gain);
      blocks.push_back(&layer.offset);
    }
  }
  return blocks;
}

std::size_t DenseNetwork::parameter_count() const {
  std::size_t count = 0;
  for (const auto* block : param_blocks()) count += block->size();
  return count;
}

CriticNetwork::CriticNetwork(std::size_t state_dim, std::size_t action_dim,
                             std::size_t hidden_dim, Rng& rng)
    : state_dim_(state_dim), action_dim_(action_dim), hidden_dim_(hidden_dim) {
  if (state_dim < 1 || action_dim < 1 || hidden_dim < 1) {
    throw ConfigError("critic: dims must be >= 1");
  }
  w_state_.resize(hidden_dim * state_dim);
  b_state_.resize(hidden_dim);
  w_action_.resize(hidden_dim * action_dim);
  b_action_.resize(hidden_dim);
  gain1_.assign(hidden_dim, 1.0);
  offset1_.assign(hidden_dim, 0.0);
  w_hidden_.resize(hidden_dim * hidden_dim);
  b_hidden_.resize(hidden_dim);
  gain2_.assign(hidden_dim, 1.0);
  offset2_.assign(hidden_dim, 0.0);
  w_out_.resize(hidden_dim);
  b_out_.resize(1);

  init_uniform(w_state_, 1.0 / std::sqrt(static_cast<double>(state_dim)), rng);
  init_uniform(b_state_, 1.0 / std::sqrt(static_cast<double>(state_dim)), rng);
  init_uniform(w_action_, 1.0 / std::sqrt(static_cast<double>(action_dim)), rng);
  init_uniform(b_action_, 1.0 / std::sqrt(static_cast<double>(action_dim)), rng);
  init_uniform(w_hidden_, 1.0 / std::sqrt(static_cast<double>(hidden_dim)), rng);
  init_uniform(b_hidden_, 1.0 / std::sqrt(static_cast<double>(hidden_dim)), rng);
  init_uniform(w_out_, 3e-3, rng);
  init_uniform(b_out_, 3e-3, rng);
}

double CriticNetwork::forward(std::span<const double> state, std::span<const double> action,
                              Cache* cache) const {
  if (hidden_dim_ == 0) throw StateError("critic: not built");
  if (state.size() != state_dim_ || action.size() != action_dim_) {
    throw ShapeError("critic: input lengths mismatch");
  }

  std::vector<double> combined(hidden_dim_);
  affine_forward(w_state_, b_state_, state, combined);
  std::vector<double> action_part(hidden_dim_);
  affine_forward(w_action_, b_action_, action, action_part);
  for (std::size_t i = 0; i < hidden_dim_; ++i) combined[i] += action_part[i];

  std::vector<double> xhat1(hidden_dim_);
  const double inv_std1 = layer_norm_forward(combined, xhat1);
  std::vector<double> h1(hidden_dim_);
  for (std::size_t i = 0; i < hidden_dim_; ++i) {
    const double v = gain1_[i] * xhat1[i] + offset1_[i];
    h1[i] = v > 0.0 ? v : 0.0;
  }

  std::vector<double> affine2(hidden_dim_);
  affine_forward(w_hidden_, b_hidden_, h1, affine2);
  std::vector<double> xhat2(hidden_dim_);
  const double inv_std2 = layer_norm_forward(affine2, xhat2);
  std::vector<double> h2(hidden_dim_);
  for (std::size_t i = 0; i < hidden_dim_; ++i) {
    const double v = gain2_[i] * xhat2[i] + offset2_[i];
    h2[i] = v > 0.0 ? v : 0.0;
  }

  double q = b_out_[0];
  for (std::size_t i = 0; i < hidden_dim_; ++i) q += w_out_[i] * h2[i];

  if (cache) {
    cache->state.assign(state.begin(), state.end());
    cache->action.assign(action.begin(), action.end());
    cache->combined = std::move(combined);
    cache->xhat1 = std::move(xhat1);
    cache->inv_std1 = inv_std1;
    cache->h1 = std::move(h1);
    cache->affine2 = std::move(affine2);
    cache->xhat2 = std::move(xhat2);
    cache->inv_std2 = inv_std2;
    cache->h2 = std::move(h2);
  }
  return q;
}

CriticNetwork::InputGrads CriticNetwork::backward(const Cache& cache, double q_grad,
                                                  GradBlocks* grads) const {
  if (cache.state.size() != state_dim_ || cache.action.size() != action_dim_ ||
      cache.h2.size() != hidden_dim_) {
    throw StateError("critic: cache does not match network shapes");
  }
  if (grads && grads->blocks.size() != 12) {
    throw StateError("critic: gradient blocks do not match network");
  }

  // Output affine.
  std::vector<double> d_h2(hidden_dim_);
  for (std::size_t i = 0; i < hidden_dim_; ++i) {
    d_h2[i] = q_grad * w_out_[i];
    if (grads) grads->blocks[10][i] += q_grad * cache.h2[i];
  }
  if (grads) grads->blocks[11][0] += q_grad;

  // Hidden ReLU + layer norm.
  std::vector<double> d_xhat2(hidden_dim_);
  for (std::size_t i = 0; i < hidden_dim_; ++i) {
    const double g = cache.h2[i] > 0.0 ? d_h2[i] : 0.0;
    if (grads) {
      grads->blocks[8][i] += g * cache.xhat2[i];
      grads->blocks[9][i] += g;
    }
    d_xhat2[i] = g * gain2_[i];
  }
  std::vector<double> d_affine2(hidden_dim_);
  layer_norm_backward(cache.xhat2, cache.inv_std2, d_xhat2, d_affine2);

  std::vector<double> d_h1(hidden_dim_, 0.0);
  affine_backward(w_hidden_, cache.h1, d_affine2, d_h1,
                  grads ? std::span<double>(grads->blocks[6]) : std::span<double>(),
                  grads ? std::span<double>(grads->blocks[7]) : std::span<double>());

  // Combine ReLU + layer norm.
  std::vector<double> d_xhat1(hidden_dim_);
  for (std::size_t i = 0; i < hidden_dim_; ++i) {
    const double g = cache.h1[i] > 0.0 ? d_h1[i] : 0.0;
    if (grads) {
      grads->blocks[4][i] += g * cache.xhat1[i];
      grads->blocks[5][i] += g;
    }
    d_xhat1[i] = g * gain1_[i];
  }
  std::vector<double> d_combined(hidden_dim_);
  layer_norm_backward(cache.xhat1, cache.inv_std1, d_xhat1, d_combined);

  InputGrads input;
  input.state.assign(state_dim_, 0.0);
  input.action.assign(action_dim_, 0.0);
  affine_backward(w_state_, cache.state, d_combined, input.state,
                  grads ? std::span<double>(grads->blocks[0]) : std::span<double>(),
                  grads ? std::span<double>(grads->blocks[1]) : std::span<double>());
  affine_backward(w_action_, cache.action, d_combined, input.action,
                  grads ? std::span<double>(grads->blocks[2]) : std::span<double>(),
                  grads ? std::span<double>(grads->blocks[3]) : std::span<double>());
  return input;
}

GradBlocks CriticNetwork::make_grads() const {
  GradBlocks g;
  for (const auto* block : param_blocks()) g.blocks.emplace_back(block->size(), 0.0);
  return g;
}

std::vector<std::vector<double>*> CriticNetwork::param_blocks() {
  return {&w_state_, &b_state_, &w_action_, &b_action_, &gain1_,  &offset1_,
          &w_hidden_, &b_hidden_, &gain2_,   &offset2_,  &w_out_, &b_out_};
}

std::vector<const std::vector<double>*> CriticNetwork::param_blocks() const {
  return {&w_state_, &b_state_, &w_action_, &b_action_, &gain1_,  &offset1_,
          &w_hidden_, &b_hidden_, &gain2_,   &offset2_,  &w_out_, &b_out_};
}

std::size_t CriticNetwork::parameter_count() const {
  std::size_t count = 0;
  for (const auto* block : param_blocks()) count += block->size();
  return count;
}

AdamState AdamState::like(const std::vector<const std::vector<double>*>& params,
                          AdamParams hyper) {
  AdamState state;
  state.hyper = hyper;
  for (const auto* block : params) {
    state.first_moment.emplace_back(block->size(), 0.0);
    state.second_moment.emplace_back(block->size(), 0.0);
  }
  return state;
}

void adam_step(const std::vector<std::vector<double>*>& params, const GradBlocks& grads,
               AdamState& state) {
  if (params.size() != grads.blocks.size() || params.size() != state.first_moment.size()) {
    throw ShapeError("adam_step: block counts mismatch");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.hyper.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.hyper.beta2, static_cast<double>(state.step));
  for (std::size_t b = 0; b < params.size(); ++b) {
    std::vector<double>& p = *params[b];
    const std::vector<double>& g = grads.blocks[b];
    std::vector<double>& m = state.first_moment[b];
    std::vector<double>& v = state.second_moment[b];
    if (p.size() != g.size()) throw ShapeError("adam_step: block size mismatch");
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = state.hyper.beta1 * m[i] + (1.0 - state.hyper.beta1) * g[i];
      v[i] = state.hyper.beta2 * v[i] + (1.0 - state.hyper.beta2) * g[i] * g[i];
      const double m_hat = m[i] / bc1;
      const double v_hat = v[i] / bc2;
      p[i] -= state.hyper.learning_rate * m_hat / (std::sqrt(v_hat) + state.hyper.epsilon);
    }
  }
}

void soft_update_params(const std::vector<std::vector<double>*>& target,
                        const std::vector<const std::vector<double>*>& source, double tau) {
  if (target.size() != source.size()) throw ShapeError("soft_update: block counts mismatch");
  for (std::size_t b = 0; b < target.size(); ++b) {
    std::vector<double>& t = *target[b];
    const std::vector<double>& s = *source[b];
    if (t.size() != s.size()) throw ShapeError("soft_update: block size mismatch");
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = tau * s[i] + (1.0 - tau) * t[i];
  }
}

DenseNetwork build_actor(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim,
                         Rng& rng) {
  std::vector<LayerSpec> specs = {
      {state_dim, hidden_dim, Activation::relu, true},
      {hidden_dim, hidden_dim, Activation::relu, true},
      {hidden_dim, action_dim, Activation::tanh, true},
  };
  return DenseNetwork(std::move(specs), rng, 3e-3);
}

CriticNetwork build_critic(std::size_t state_dim, std::size_t action_dim, std::size_t hidden_dim,
                           Rng& rng) {
  return CriticNetwork(state_dim, action_dim, hidden_dim, rng);
}

std::uint64_t inference_macs(const DenseNetwork& net) {
  std::uint64_t macs = 0;
  for (const LayerSpec& s : net.specs()) {
    macs += static_cast<std::uint64_t>(s.input_dim) * s.output_dim;
  }
  return macs;
}

std::uint64_t inference_flops(const DenseNetwork& net) {
  std::uint64_t flops = 0;
  for (const LayerSpec& s : net.specs()) {
    flops += 2ULL * s.input_dim * s.output_dim + s.output_dim;
    if (s.normalize) flops += 7ULL * s.output_dim;
    if (s.activation != Activation::none) flops += s.output_dim;
  }
  return flops;
}

// --- checkpoint serialization ---

class NetworkCodec {
 public:
  static void write(std::ostream& out, const DenseNetwork& actor, const CriticNetwork& critic) {
    out.write("RSNW", 4);
    write_u32(out, 1);

    write_u32(out, static_cast<std::uint32_t>(actor.specs().size()));
    for (const LayerSpec& s : actor.specs()) {
      write_u64(out, s.input_dim);
      write_u64(out, s.output_dim);
      const std::uint8_t act = static_cast<std::uint8_t>(s.activation);
      const std::uint8_t norm = s.normalize ? 1 : 0;
      out.write(reinterpret_cast<const char*>(&act), 1);
      out.write(reinterpret_cast<const char*>(&norm), 1);
    }
    write_u64(out, critic.state_dim());
    write_u64(out, critic.action_dim());
    write_u64(out, critic.hidden_dim());

    write_blocks(out, actor.param_blocks());
    write_blocks(out, critic.param_blocks());
  }

  static Checkpoint read(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "RSNW", 4) != 0) {
      throw ConfigError("checkpoint: bad magic");
    }
    if (read_u32(in) != 1) throw ConfigError("checkpoint: unsupported version");

    const std::uint32_t num_layers = read_u32(in);
    std::vector<LayerSpec> specs;
    for (std::uint32_t i = 0; i < num_layers; ++i) {
      LayerSpec s;
      s.input_dim = read_u64(in);
      s.output_dim = read_u64(in);
      std::uint8_t act = 0, norm = 0;
      in.read(reinterpret_cast<char*>(&act), 1);
      in.read(reinterpret_cast<char*>(&norm), 1);
      s.activation = static_cast<Activation>(act);
      s.normalize = norm != 0;
      specs.push_back(s);
    }
    const std::size_t state_dim = read_u64(in);
    const std::size_t action_dim = read_u64(in);
    const std::size_t hidden_dim = read_u64(in);
    if (!in) throw ConfigError("checkpoint: truncated header");

    Checkpoint ckpt;
    Rng scratch(0);
    ckpt.actor = DenseNetwork(specs, scratch);
    ckpt.critic = CriticNetwork(state_dim, action_dim, hidden_dim, scratch);
    read_blocks(in, ckpt.actor.param_blocks());
    read_blocks(in, ckpt.critic.param_blocks());
    if (!in) throw ConfigError("checkpoint: truncated parameter data");
    return ckpt;
  }

 private:
  static void write_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  static void write_u64(std::ostream& out, std::uint64_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(v));
  }
  static std::uint32_t read_u32(std::istream& in) {
    std::uint32_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
  }
  static std::uint64_t read_u64(std::istream& in) {
    std::uint64_t v = 0;
    in.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
  }
  static void write_blocks(std::ostream& out,
                           const std::vector<const std::vector<double>*>& blocks) {
    write_u32(out, static_cast<std::uint32_t>(blocks.size()));
    for (const auto* block : blocks) {
      write_u64(out, block->size());
      out.write(reinterpret_cast<const char*>(block->data()),
                static_cast<std::streamsize>(block->size() * sizeof(double)));
    }
  }
  static void read_blocks(std::istream& in, const std::vector<std::vector<double>*>& blocks) {
    const std::uint32_t count = read_u32(in);
    if (count != blocks.size()) throw ConfigError("checkpoint: block count mismatch");
    for (auto* block : blocks) {
      const std::uint64_t len = read_u64(in);
      if (len != block->size()) throw ConfigError("checkpoint: block length mismatch");
      in.read(reinterpret_cast<char*>(block->data()),
              static_cast<std::streamsize>(len * sizeof(double)));
    }
  }
};

void save_checkpoint(const std::string& path, const DenseNetwork& actor,
                     const CriticNetwork& critic) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("checkpoint: cannot open " + path + " for writing");
  NetworkCodec::write(out, actor, critic);
  if (!out) throw ConfigError("checkpoint: write failed for " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checkpoint: cannot open " + path);
  return NetworkCodec::read(in);
}

}  // namespace risim
