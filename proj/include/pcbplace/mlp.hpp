// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcbplace {

/// Dense feed-forward network: ReLU on hidden layers, identity output.
/// Parameters live in one flat buffer, layer by layer, each layer storing a
/// row-major (out x in) weight matrix followed by its bias vector. Gradients
/// use the same layout.
class Mlp {
public:
  /// All-zero parameters.
  explicit Mlp(std::vector<std::size_t> layer_dims);

  /// Weights uniform in +-sqrt(6 / (fan_in + fan_out)), zero biases.
  static Mlp glorot(std::vector<std::size_t> layer_dims, std::uint64_t seed);

  const std::vector<std::size_t> &layer_dims() const { return dims_; }
  std::size_t layer_count() const { return dims_.size() - 1; }
  std::size_t input_size() const { return dims_.front(); }
  std::size_t output_size() const { return dims_.back(); }
  std::size_t parameter_count() const { return params_.size(); }

  std::span<const double> parameters() const { return params_; }
  std::span<double> parameters() { return params_; }

  std::span<const double> weights(std::size_t layer) const;
  std::span<double> weights(std::size_t layer);
  std::span<const double> bias(std::size_t layer) const;
  std::span<double> bias(std::size_t layer);

  /// Per-layer outputs of one forward pass; `values[0]` is the input and
  /// `values.back()` the network output.
  struct Activations {
    std::vector<std::vector<double>> values;
    std::span<const double> output() const { return values.back(); }
  };

  /// Throws ShapeError when `input` does not match the input width.
  std::vector<double> forward(std::span<const double> input) const;
  void forward(std::span<const double> input, Activations &acts) const;

  /// Accumulates d(loss)/d(params) into `grad` given d(loss)/d(output).
  void backward(const Activations &acts, std::span<const double> output_grad, std::span<double> grad) const;

  bool all_finite() const;

  friend bool operator==(const Mlp &, const Mlp &) = default;

private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.99;
  double eps = 1e-8;
};

/// Moment accumulators for one network.
struct AdamState {
  AdamConfig config;
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t step = 0;

  AdamState() = default;
  AdamState(const Mlp &net, AdamConfig cfg);
};

/// Bias-corrected Adam update. Throws NonFiniteGradientError (leaving net
/// and state untouched) if any gradient entry is NaN or infinite, and
/// ShapeError on size mismatch.
void adam_step(Mlp &net, AdamState &state, std::span<const double> grad);

/// Checkpoint layout (little-endian): u64 layer count + 1, u64 per layer
/// dim, then for each layer the row-major weights and the biases as f64.
std::string serialize_checkpoint(const Mlp &net);
Mlp parse_checkpoint(std::string_view bytes);
void save_checkpoint(const Mlp &net, const std::filesystem::path &path);
Mlp load_checkpoint(const std::filesystem::path &path);

} // namespace pcbplace
