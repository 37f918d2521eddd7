// SPDX-License-Identifier: Apache-2.0
#include "../loss_core.hpp"
#include "pcbplace/rng.hpp"
#include "training.hpp"

namespace pcbplace {

TrainResult train_dqn(const PcbInstance &instance, const TrainConfig &config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = instance.action_count();
  const RewardTable gamma_table = build_gamma(instance, config.reward);
  PlacementEnv env(instance, gamma_table, config.reward, config.mode);
  const auto tokens = detail::all_tokens(instance, config.mode);

  Mlp qp = Mlp::glorot(detail::network_dims(instance, config), detail::sub_seed(config.seed, 0));
  Mlp qt = qp;
  AdamState adam(qp, config.adam);
  Rng rng(detail::sub_seed(config.seed, 1));

  detail::TransitionWindow window(config.minibatch);
  detail::TargetCache targets;
  targets.refresh(qt, tokens);
  std::vector<double> grad(qp.parameter_count());

  TrainResult result;
  result.method = config.mode == EncodingMode::PassiveNet ? "dqnnet" : "dqn";
  std::size_t iteration = 0;
  std::size_t episode = 0;
  while (!detail::out_of_budget(config, iteration, episode)) {
    StateToken token = env.reset();
    double episode_reward = 0.0;
    double loss = 0.0;
    double epsilon = 0.0;
    while (!env.terminal() && iteration < config.max_iterations) {
      const std::size_t state = env.current_state();
      epsilon = epsilon_at(config, iteration);
      std::size_t action;
      if (rng.bernoulli(epsilon)) {
        action = rng.below(n);
      } else {
        action = detail::argmax(qp.forward(tokens[state].as_input()));
      }
      StepResult step = env.step(action);
      episode_reward += step.reward;
      const std::optional<std::size_t> next_passive =
          step.next ? std::optional<std::size_t>(state + 1) : std::nullopt;
      window.push({std::move(token), action, step.reward, step.next}, next_passive);

      std::fill(grad.begin(), grad.end(), 0.0);
      loss = detail::td_loss(qp, window.items(), targets.targets(window, config.gamma), grad);
      detail::check_finite_loss(loss, iteration, epsilon, result.curve);
      adam_step(qp, adam, grad);

      ++iteration;
      if (iteration % config.target_update_period == 0) {
        qt = qp;
        targets.refresh(qt, tokens);
      }
      if (step.next)
        token = std::move(*step.next);
    }
    ++episode;
    double greedy = std::numeric_limits<double>::quiet_NaN();
    if (episode % config.eval_every == 0)
      greedy = tewl(instance, predict_placement(instance, qp, config.mode));
    result.curve.push_back({iteration, epsilon, loss, episode_reward, greedy});
  }

  result.placement = predict_placement(instance, qp, config.mode);
  result.metrics = evaluate_metrics(instance, result.placement);
  result.q_network = std::move(qp);
  result.seconds = detail::seconds_since(start);
  return result;
}

} // namespace pcbplace
