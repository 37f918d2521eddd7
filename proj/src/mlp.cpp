// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "pcbplace/error.hpp"
#include "pcbplace/rng.hpp"
#include "pcbplace/simd/kernels.hpp"

namespace pcbplace {

Mlp::Mlp(std::vector<std::size_t> layer_dims) : dims_(std::move(layer_dims)) {
  if (dims_.size() < 2)
    throw ShapeError("network needs at least an input and an output layer");
  if (std::any_of(dims_.begin(), dims_.end(), [](std::size_t d) { return d == 0; }))
    throw ShapeError("layer widths must be positive");
  std::size_t total = 0;
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    offsets_.push_back(total);
    total += dims_[l] * dims_[l + 1] + dims_[l + 1];
  }
  params_.assign(total, 0.0);
}

Mlp Mlp::glorot(std::vector<std::size_t> layer_dims, std::uint64_t seed) {
  Mlp net(std::move(layer_dims));
  Rng rng(seed);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    const double limit = std::sqrt(6.0 / static_cast<double>(net.dims_[l] + net.dims_[l + 1]));
    for (double &w : net.weights(l))
      w = rng.uniform(-limit, limit);
  }
  return net;
}

std::span<const double> Mlp::weights(std::size_t l) const {
  return std::span<const double>(params_).subspan(offsets_.at(l), dims_[l] * dims_[l + 1]);
}
std::span<double> Mlp::weights(std::size_t l) {
  return std::span<double>(params_).subspan(offsets_.at(l), dims_[l] * dims_[l + 1]);
}
std::span<const double> Mlp::bias(std::size_t l) const {
  return std::span<const double>(params_).subspan(offsets_.at(l) + dims_[l] * dims_[l + 1], dims_[l + 1]);
}
std::span<double> Mlp::bias(std::size_t l) {
  return std::span<double>(params_).subspan(offsets_.at(l) + dims_[l] * dims_[l + 1], dims_[l + 1]);
}

std::vector<double> Mlp::forward(std::span<const double> input) const {
  Activations acts;
  forward(input, acts);
  return std::move(acts.values.back());
}

void Mlp::forward(std::span<const double> input, Activations &acts) const {
  if (input.size() != input_size())
    throw ShapeError("input has " + std::to_string(input.size()) + " entries, network expects " +
                     std::to_string(input_size()));
  const simd::Kernels &k = simd::active();
  acts.values.resize(dims_.size());
  acts.values[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < layer_count(); ++l) {
    const std::size_t in = dims_[l], out = dims_[l + 1];
    const double *w = params_.data() + offsets_[l];
    const double *b = w + in * out;
    const double *x = acts.values[l].data();
    std::vector<double> &y = acts.values[l + 1];
    y.resize(out);
    for (std::size_t o = 0; o < out; ++o)
      y[o] = b[o] + k.dot(w + o * in, x, in);
    if (l + 1 < layer_count())
      k.relu(y.data(), out);
  }
}

void Mlp::backward(const Activations &acts, std::span<const double> output_grad, std::span<double> grad) const {
  if (output_grad.size() != output_size() || grad.size() != params_.size())
    throw ShapeError("backward: gradient shape mismatch");
  const simd::Kernels &k = simd::active();
  std::vector<double> delta(output_grad.begin(), output_grad.end());
  std::vector<double> prev;
  for (std::size_t l = layer_count(); l-- > 0;) {
    const std::size_t in = dims_[l], out = dims_[l + 1];
    const double *w = params_.data() + offsets_[l];
    double *gw = grad.data() + offsets_[l];
    double *gb = gw + in * out;
    const double *x = acts.values[l].data();
    const bool need_prev = l > 0;
    if (need_prev)
      prev.assign(in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      const double d = delta[o];
      if (d == 0.0)
        continue;
      k.axpy(d, x, gw + o * in, in);
      gb[o] += d;
      if (need_prev)
        k.axpy(d, w + o * in, prev.data(), in);
    }
    if (need_prev) {
      for (std::size_t i = 0; i < in; ++i)
        if (!(x[i] > 0.0))
          prev[i] = 0.0;
      delta.swap(prev);
    }
  }
}

bool Mlp::all_finite() const {
  return std::all_of(params_.begin(), params_.end(), [](double v) { return std::isfinite(v); });
}

AdamState::AdamState(const Mlp &net, AdamConfig cfg)
    : config(cfg), m(net.parameter_count(), 0.0), v(net.parameter_count(), 0.0) {}

void adam_step(Mlp &net, AdamState &state, std::span<const double> grad) {
  if (grad.size() != net.parameter_count() || state.m.size() != grad.size() || state.v.size() != grad.size())
    throw ShapeError("adam_step: gradient/moment shape mismatch");
  for (std::size_t i = 0; i < grad.size(); ++i)
    if (!std::isfinite(grad[i]))
      throw NonFiniteGradientError("non-finite gradient at parameter " + std::to_string(i));
  const AdamConfig &c = state.config;
  const auto t = static_cast<double>(state.step + 1);
  const simd::AdamCoeffs coeffs{c.lr, c.beta1, c.beta2, c.eps, 1.0 / (1.0 - std::pow(c.beta1, t)),
                                1.0 / (1.0 - std::pow(c.beta2, t))};
  simd::active().adam(net.parameters().data(), grad.data(), state.m.data(), state.v.data(), grad.size(), coeffs);
  ++state.step;
}

} // namespace pcbplace
