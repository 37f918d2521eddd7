// SPDX-License-Identifier: Apache-2.0
// Plumbing shared by the DQN and actor-critic training loops.
#pragma once

#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "pcbplace/agents.hpp"
#include "pcbplace/losses.hpp"

namespace pcbplace::detail {

inline std::vector<std::size_t> network_dims(const PcbInstance &instance, const TrainConfig &config) {
  std::vector<std::size_t> dims{token_width(instance, config.mode)};
  dims.insert(dims.end(), config.hidden.begin(), config.hidden.end());
  dims.push_back(instance.action_count());
  return dims;
}

/// Distinct, reproducible sub-seeds derived from the run seed.
inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best])
      best = i;
  return best;
}

/// The most recent `capacity` transitions, plus the passive index of each
/// next state so bootstrap targets can be looked up per state.
class TransitionWindow {
public:
  explicit TransitionWindow(std::size_t capacity) : capacity_(capacity) {}

  void push(Transition t, std::optional<std::size_t> next_passive) {
    items_.push_back(std::move(t));
    next_.push_back(next_passive);
    if (items_.size() > capacity_) {
      items_.erase(items_.begin());
      next_.erase(next_.begin());
    }
  }

  std::span<const Transition> items() const { return items_; }
  const std::vector<std::optional<std::size_t>> &next_passives() const { return next_; }

private:
  std::size_t capacity_;
  std::vector<Transition> items_;
  std::vector<std::optional<std::size_t>> next_;
};

/// max_a' Q_t(s', a') per passive state, recomputed at every hard update.
class TargetCache {
public:
  void refresh(const Mlp &qt, std::span<const StateToken> tokens) {
    values_.clear();
    for (const StateToken &t : tokens) {
      const std::vector<double> q = qt.forward(t.as_input());
      values_.push_back(q[argmax(q)]);
    }
  }

  std::vector<double> targets(const TransitionWindow &window, double gamma) const {
    std::vector<double> out;
    const auto items = window.items();
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto &next = window.next_passives()[i];
      out.push_back(next ? items[i].reward + gamma * values_[*next] : items[i].reward);
    }
    return out;
  }

private:
  std::vector<double> values_;
};

inline std::vector<StateToken> all_tokens(const PcbInstance &instance, EncodingMode mode) {
  std::vector<StateToken> tokens;
  for (std::size_t s = 0; s < instance.passive_count(); ++s)
    tokens.push_back(encode_state(instance, s, mode));
  return tokens;
}

inline void check_finite_loss(double loss, std::size_t iteration, double epsilon, std::vector<CurvePoint> &curve) {
  if (!std::isfinite(loss))
    throw TrainingAborted("training aborted: non-finite loss " + std::to_string(loss) + " at iteration " +
                              std::to_string(iteration) + " (epsilon " + std::to_string(epsilon) + ")",
                          std::move(curve));
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline bool out_of_budget(const TrainConfig &config, std::size_t iteration, std::size_t episode) {
  return iteration >= config.max_iterations || (config.max_episodes != 0 && episode >= config.max_episodes);
}

} // namespace pcbplace::detail
