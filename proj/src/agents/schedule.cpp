// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "pcbplace/agents.hpp"

namespace pcbplace {

void validate(const TrainConfig &c) {
  auto fail = [](const std::string &what) { throw ValidationError("invalid training config: " + what); };
  if (!(c.epsilon_end >= 0.0 && c.epsilon_end <= c.epsilon_start && c.epsilon_start <= 1.0))
    fail("need 0 <= epsilon_end <= epsilon_start <= 1");
  if (!(c.gamma >= 0.0 && c.gamma <= 1.0))
    fail("gamma must lie in [0, 1]");
  if (!(c.reward.alpha >= 0.0 && c.reward.alpha <= 1.0))
    fail("alpha must lie in [0, 1]");
  if (c.minibatch == 0)
    fail("minibatch must be positive");
  if (c.target_update_period == 0)
    fail("target_update_period must be positive");
  if (!(c.adam.lr > 0.0))
    fail("learning rate must be positive");
  if (!(c.adam.beta1 >= 0.0 && c.adam.beta1 < 1.0 && c.adam.beta2 >= 0.0 && c.adam.beta2 < 1.0))
    fail("Adam betas must lie in [0, 1)");
  for (const std::size_t h : c.hidden)
    if (h == 0)
      fail("hidden widths must be positive");
  if (c.eval_every == 0)
    fail("eval_every must be positive");
}

double epsilon_at(const TrainConfig &c, std::size_t iteration) {
  if (c.epsilon_horizon == 0 || iteration >= c.epsilon_horizon)
    return c.epsilon_end;
  const double frac = static_cast<double>(iteration) / static_cast<double>(c.epsilon_horizon);
  return c.epsilon_start + (c.epsilon_end - c.epsilon_start) * frac;
}

void validate(const SaConfig &c) {
  if (c.initial_temperature && !(*c.initial_temperature > 0.0))
    throw ValidationError("invalid SA config: initial temperature must be positive");
  if (!(c.cooling_rate > 0.0 && c.cooling_rate < 1.0))
    throw ValidationError("invalid SA config: cooling rate must lie in (0, 1)");
  if (c.trace_every == 0)
    throw ValidationError("invalid SA config: trace_every must be positive");
}

double sa_acceptance_probability(double delta, double temperature) {
  if (delta <= 0.0)
    return 1.0;
  return std::exp(-delta / temperature);
}

double mean_pairwise_slot_distance(const PcbInstance &instance) {
  const auto slots = instance.slots();
  if (slots.size() < 2)
    return 1.0;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < slots.size(); ++i)
    for (std::size_t j = i + 1; j < slots.size(); ++j, ++pairs)
      sum += euclidean_distance(slots[i].anchor, slots[j].anchor);
  return sum / static_cast<double>(pairs);
}

} // namespace pcbplace
