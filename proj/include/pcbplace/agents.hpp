// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcbplace/error.hpp"
#include "pcbplace/metrics.hpp"
#include "pcbplace/mlp.hpp"
#include "pcbplace/model.hpp"
#include "pcbplace/reward_env.hpp"

namespace pcbplace {

struct TrainConfig {
  EncodingMode mode = EncodingMode::PassiveOnly;
  double gamma = 0.96;
  AdamConfig adam{};
  std::size_t minibatch = 24;
  double epsilon_start = 0.9;
  double epsilon_end = 0.1;
  std::size_t epsilon_horizon = 20000;
  std::size_t target_update_period = 800;
  RewardConfig reward{};
  std::uint64_t seed = 1;
  /// Environment steps to train for.
  std::size_t max_iterations = 20000;
  /// Optional episode cap; 0 means no cap.
  std::size_t max_episodes = 0;
  /// Hidden widths F, Z, K.
  std::vector<std::size_t> hidden{128, 64, 64};
  /// Greedy TEWL is recorded on the learning curve every this many episodes.
  std::size_t eval_every = 1;
};

/// Throws ValidationError when a field is out of range.
void validate(const TrainConfig &config);

/// Linear decay from epsilon_start to epsilon_end over epsilon_horizon
/// iterations, constant afterwards.
double epsilon_at(const TrainConfig &config, std::size_t iteration);

enum class SaAcceptance {
  /// exp(-(TEWL_new - TEWL_best) / T)
  AgainstBest,
  /// exp(-(TEWL_new - TEWL_current) / T)
  AgainstCurrent,
};

struct SaConfig {
  /// Unset: mean pairwise slot-anchor distance of the instance.
  std::optional<double> initial_temperature;
  double cooling_rate = 0.9995;
  std::size_t iterations = 50000;
  std::uint64_t seed = 1;
  SaAcceptance acceptance = SaAcceptance::AgainstBest;
  /// SA trace sampling period in iterations.
  std::size_t trace_every = 100;
};

void validate(const SaConfig &config);

/// Probability of accepting a move that worsens the reference TEWL by
/// `delta` at temperature `t`.
double sa_acceptance_probability(double delta, double temperature);

double mean_pairwise_slot_distance(const PcbInstance &instance);

struct CurvePoint {
  std::size_t iteration = 0;
  double epsilon = 0.0;
  double loss = 0.0;
  double episode_reward = 0.0;
  /// NaN on episodes where greedy inference was skipped.
  double greedy_tewl = 0.0;
};

struct SaTracePoint {
  std::size_t iteration = 0;
  double temperature = 0.0;
  double current_tewl = 0.0;
  double best_tewl = 0.0;
};

struct TrainResult {
  std::string method;
  Placement placement;
  MetricsReport metrics;
  std::vector<CurvePoint> curve;
  std::vector<SaTracePoint> sa_trace;
  /// Value network (DQN policy or A2C critic).
  std::optional<Mlp> q_network;
  std::optional<Mlp> actor;
  double seconds = 0.0;
};

/// Raised when training produces a non-finite loss. Carries the partial
/// learning curve.
class TrainingAborted : public Error {
public:
  TrainingAborted(const std::string &what, std::vector<CurvePoint> partial)
      : Error(what), partial_curve(std::move(partial)) {}
  std::vector<CurvePoint> partial_curve;
};

TrainResult train_dqn(const PcbInstance &instance, const TrainConfig &config);
TrainResult train_a2c(const PcbInstance &instance, const TrainConfig &config);
TrainResult run_sa(const PcbInstance &instance, const SaConfig &config);

/// Greedy decoding in passive order. Each passive takes its highest-scoring
/// unoccupied slot, ties going to the lower index. `scores` is row-major
/// M x N_actions.
Placement masked_greedy(std::span<const double> scores, std::size_t passives, std::size_t actions);

enum class PolicyKind { QValues, Actor };

/// Runs `net` on every state token and decodes with masked_greedy. For an
/// actor, argmax of the softmax equals argmax of the logits.
Placement predict_placement(const PcbInstance &instance, const Mlp &net, EncodingMode mode,
                            PolicyKind kind = PolicyKind::QValues);

enum class OracleObjective { Tewl, RewardSum };

struct OracleResult {
  std::vector<std::size_t> assignment;
  double value = 0.0;
  /// Number of assignments attaining `value` exactly.
  std::size_t optimum_count = 0;
  std::size_t enumerated = 0;
};

/// Hard cap on the number of injective assignments the oracle will visit.
inline constexpr std::size_t kOracleLimit = 10'000'000;

/// Exhaustive search over injective assignments: minimum TEWL, or maximum
/// summed immediate reward. Ties keep the lexicographically smallest
/// assignment. Throws OracleScaleError above kOracleLimit assignments.
OracleResult brute_force_oracle(const PcbInstance &instance, OracleObjective objective,
                                const RewardConfig &reward = {});

} // namespace pcbplace
