// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcbplace/model.hpp"

namespace pcbplace {

struct RewardConfig {
  /// Weight of the non-overlap term; the proximity term gets 1 - alpha.
  double alpha = 0.6;
  /// Top-K size; 0 selects ceil(N_actions / N_nets).
  std::size_t k = 0;
};

/// Top-K size actually used for `instance`.
std::size_t effective_k(const PcbInstance &instance, const RewardConfig &config);

/// Overlap threshold d(s) of a passive: the larger of its two dimensions.
double overlap_threshold(const Passive &passive);

/// Sparse M x N_actions table with value 1 on each passive's Top-K slots.
class RewardTable {
public:
  RewardTable(std::size_t states, std::size_t actions, std::size_t k);

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }
  std::size_t k() const { return k_; }

  double at(std::size_t state, std::size_t action) const { return gamma_.at(state * actions_ + action); }
  bool positive(std::size_t state, std::size_t action) const { return at(state, action) > 0.0; }

  /// Top-K slots of `state`, nearest first. Empty for excluded-net passives.
  const std::vector<std::size_t> &topk(std::size_t state) const { return topk_.at(state); }

  std::size_t nonzeros(std::size_t state) const;

  /// Whitespace-separated text matrix, one row per passive.
  std::string to_text() const;

private:
  friend RewardTable build_gamma(const PcbInstance &, const RewardConfig &);

  std::size_t states_;
  std::size_t actions_;
  std::size_t k_;
  std::vector<double> gamma_;
  std::vector<std::vector<std::size_t>> topk_;
};

/// Mean of the pins sharing passive `p`'s net; nullopt for excluded or
/// pin-less nets.
std::optional<Vec2> net_centroid(const PcbInstance &instance, std::size_t passive_index);

/// Builds the reward table. Slots are ranked by Euclidean distance from
/// anchor to centroid, ties going to the lower slot index.
RewardTable build_gamma(const PcbInstance &instance, const RewardConfig &config);

/// Per-episode record of chosen actions (the sQp table) and rewards.
class EpisodeTrace {
public:
  EpisodeTrace(std::size_t states, std::size_t actions);

  void choose(std::size_t state, std::size_t action);
  const std::optional<std::size_t> &chosen(std::size_t state) const { return chosen_.at(state); }
  std::uint8_t sqp(std::size_t state, std::size_t action) const { return sqp_.at(state * actions_ + action); }

  std::size_t states() const { return states_; }
  std::size_t actions() const { return actions_; }

  void set_reward(std::size_t state, double r) { rewards_.at(state) = r; }
  double reward(std::size_t state) const { return rewards_.at(state); }
  const std::vector<double> &rewards() const { return rewards_; }

  void clear();

private:
  std::size_t states_;
  std::size_t actions_;
  std::vector<std::uint8_t> sqp_;
  std::vector<std::optional<std::size_t>> chosen_;
  std::vector<double> rewards_;
};

/// 1 when every other chosen state's anchor lies farther than d(state) from
/// the anchor chosen for `state`; 0 otherwise.
double reward_nonoverlap(const PcbInstance &instance, const EpisodeTrace &trace, std::size_t state);

/// 1 when the action chosen for `state` is one of its Top-K slots.
double reward_proximity(const RewardTable &gamma, const EpisodeTrace &trace, std::size_t state);

/// alpha * non-overlap + (1 - alpha) * proximity.
double total_reward(const PcbInstance &instance, const RewardTable &gamma, const EpisodeTrace &trace,
                    std::size_t state, const RewardConfig &config);

/// Sum of immediate rewards when `slots` are placed in passive order.
double episode_return(const PcbInstance &instance, const RewardTable &gamma, const RewardConfig &config,
                      std::span<const std::size_t> slots);

struct StepResult {
  std::optional<StateToken> next;  ///< nullopt when the episode has ended
  double reward = 0.0;
};

/// Episodic environment placing passives in listing order with an immediate
/// reward per placement. Holds references; the instance and table must
/// outlive it.
class PlacementEnv {
public:
  PlacementEnv(const PcbInstance &instance, const RewardTable &gamma, RewardConfig config, EncodingMode mode);

  /// Starts a new episode and returns the first state.
  StateToken reset();

  /// Places the current passive at `action`. Throws ProtocolError after the
  /// episode has ended and IndexError for out-of-range actions.
  StepResult step(std::size_t action);

  bool terminal() const { return cursor_ >= instance_.passive_count(); }
  std::size_t current_state() const { return cursor_; }
  const EpisodeTrace &trace() const { return trace_; }
  const PcbInstance &instance() const { return instance_; }
  EncodingMode mode() const { return mode_; }

private:
  const PcbInstance &instance_;
  const RewardTable &gamma_;
  RewardConfig config_;
  EncodingMode mode_;
  EpisodeTrace trace_;
  std::size_t cursor_ = 0;
};

} // namespace pcbplace
