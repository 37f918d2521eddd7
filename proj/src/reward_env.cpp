// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/reward_env.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pcbplace/error.hpp"

namespace pcbplace {

std::size_t effective_k(const PcbInstance &instance, const RewardConfig &config) {
  const std::size_t n = instance.action_count();
  std::size_t k = config.k;
  if (k == 0) {
    const std::size_t nets = std::max<std::size_t>(1, instance.net_count());
    k = (n + nets - 1) / nets;
  }
  return std::min(k, n);
}

double overlap_threshold(const Passive &passive) { return std::max(passive.dims.x, passive.dims.y); }

RewardTable::RewardTable(std::size_t states, std::size_t actions, std::size_t k)
    : states_(states), actions_(actions), k_(k), gamma_(states * actions, 0.0), topk_(states) {}

std::size_t RewardTable::nonzeros(std::size_t state) const {
  std::size_t n = 0;
  for (std::size_t a = 0; a < actions_; ++a)
    n += positive(state, a) ? 1 : 0;
  return n;
}

std::string RewardTable::to_text() const {
  std::ostringstream out;
  for (std::size_t s = 0; s < states_; ++s) {
    for (std::size_t a = 0; a < actions_; ++a)
      out << (a ? " " : "") << at(s, a);
    out << '\n';
  }
  return out.str();
}

std::optional<Vec2> net_centroid(const PcbInstance &instance, std::size_t passive_index) {
  const auto pins = instance.pins_for_passive(passive_index);
  if (pins.empty())
    return std::nullopt;
  Vec2 sum;
  for (const std::size_t t : pins)
    sum = sum + instance.pins()[t].pos;
  return (1.0 / static_cast<double>(pins.size())) * sum;
}

RewardTable build_gamma(const PcbInstance &instance, const RewardConfig &config) {
  const std::size_t n = instance.action_count();
  const std::size_t k = effective_k(instance, config);
  RewardTable table(instance.passive_count(), n, k);
  std::vector<std::size_t> order(n);
  std::vector<double> dist(n);
  for (std::size_t s = 0; s < instance.passive_count(); ++s) {
    const auto centroid = net_centroid(instance, s);
    if (!centroid)
      continue;
    for (std::size_t a = 0; a < n; ++a)
      dist[a] = euclidean_distance(instance.slots()[a].anchor, *centroid);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return dist[l] < dist[r]; });
    table.topk_[s].assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    for (const std::size_t a : table.topk_[s])
      table.gamma_[s * n + a] = 1.0;
  }
  return table;
}

EpisodeTrace::EpisodeTrace(std::size_t states, std::size_t actions)
    : states_(states), actions_(actions), sqp_(states * actions, 0), chosen_(states), rewards_(states, 0.0) {}

void EpisodeTrace::choose(std::size_t state, std::size_t action) {
  if (state >= states_ || action >= actions_)
    throw IndexError("trace entry (" + std::to_string(state) + ", " + std::to_string(action) + ") out of range");
  if (const auto &prev = chosen_[state])
    sqp_[state * actions_ + *prev] = 0;
  chosen_[state] = action;
  sqp_[state * actions_ + action] = 1;
}

void EpisodeTrace::clear() {
  std::fill(sqp_.begin(), sqp_.end(), std::uint8_t{0});
  std::fill(chosen_.begin(), chosen_.end(), std::nullopt);
  std::fill(rewards_.begin(), rewards_.end(), 0.0);
}

double reward_nonoverlap(const PcbInstance &instance, const EpisodeTrace &trace, std::size_t state) {
  const auto &mine = trace.chosen(state);
  if (!mine)
    throw ProtocolError("state " + std::to_string(state) + " has no chosen action");
  const Vec2 here = slot_anchor(instance, *mine);
  const double d = overlap_threshold(instance.passives()[state]);
  for (std::size_t other = 0; other < trace.states(); ++other) {
    if (other == state)
      continue;
    const auto &theirs = trace.chosen(other);
    if (theirs && !(euclidean_distance(here, slot_anchor(instance, *theirs)) > d))
      return 0.0;
  }
  return 1.0;
}

double reward_proximity(const RewardTable &gamma, const EpisodeTrace &trace, std::size_t state) {
  const auto &mine = trace.chosen(state);
  if (!mine)
    throw ProtocolError("state " + std::to_string(state) + " has no chosen action");
  return gamma.positive(state, *mine) ? 1.0 : 0.0;
}

double total_reward(const PcbInstance &instance, const RewardTable &gamma, const EpisodeTrace &trace,
                    std::size_t state, const RewardConfig &config) {
  return config.alpha * reward_nonoverlap(instance, trace, state) +
         (1.0 - config.alpha) * reward_proximity(gamma, trace, state);
}

double episode_return(const PcbInstance &instance, const RewardTable &gamma, const RewardConfig &config,
                      std::span<const std::size_t> slots) {
  EpisodeTrace trace(instance.passive_count(), instance.action_count());
  double sum = 0.0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    trace.choose(s, slots[s]);
    sum += total_reward(instance, gamma, trace, s, config);
  }
  return sum;
}

PlacementEnv::PlacementEnv(const PcbInstance &instance, const RewardTable &gamma, RewardConfig config,
                           EncodingMode mode)
    : instance_(instance), gamma_(gamma), config_(config), mode_(mode),
      trace_(instance.passive_count(), instance.action_count()), cursor_(instance.passive_count()) {}

StateToken PlacementEnv::reset() {
  trace_.clear();
  cursor_ = 0;
  return encode_state(instance_, 0, mode_);
}

StepResult PlacementEnv::step(std::size_t action) {
  if (terminal())
    throw ProtocolError("step called on a finished episode");
  if (action >= instance_.action_count())
    throw IndexError("action " + std::to_string(action) + " out of range [0, " +
                     std::to_string(instance_.action_count()) + ")");
  const std::size_t state = cursor_;
  trace_.choose(state, action);
  StepResult result;
  result.reward = total_reward(instance_, gamma_, trace_, state, config_);
  trace_.set_reward(state, result.reward);
  ++cursor_;
  if (!terminal())
    result.next = encode_state(instance_, cursor_, mode_);
  return result;
}

} // namespace pcbplace
