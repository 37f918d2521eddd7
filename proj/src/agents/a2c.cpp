// SPDX-License-Identifier: Apache-2.0
#include "../loss_core.hpp"
#include "pcbplace/rng.hpp"
#include "training.hpp"

namespace pcbplace {

namespace {

std::size_t sample(Rng &rng, std::span<const double> probs) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc)
      return i;
  }
  return probs.size() - 1;
}

} // namespace

TrainResult train_a2c(const PcbInstance &instance, const TrainConfig &config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = instance.action_count();
  const RewardTable gamma_table = build_gamma(instance, config.reward);
  PlacementEnv env(instance, gamma_table, config.reward, config.mode);
  const auto tokens = detail::all_tokens(instance, config.mode);
  const auto dims = detail::network_dims(instance, config);

  Mlp qp = Mlp::glorot(dims, detail::sub_seed(config.seed, 0));
  Mlp qt = qp;
  Mlp actor = Mlp::glorot(dims, detail::sub_seed(config.seed, 2));
  // Near-zero output weights start the policy close to uniform.
  for (double &w : actor.weights(actor.layer_count() - 1))
    w *= 0.01;
  AdamState critic_adam(qp, config.adam);
  AdamState actor_adam(actor, config.adam);
  Rng rng(detail::sub_seed(config.seed, 1));

  detail::TransitionWindow window(config.minibatch);
  detail::TargetCache targets;
  targets.refresh(qt, tokens);
  std::vector<double> critic_grad(qp.parameter_count());
  std::vector<double> actor_grad(actor.parameter_count());
  std::vector<double> q_taken;

  TrainResult result;
  result.method = "a2c";
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
        action = sample(rng, softmax(actor.forward(tokens[state].as_input())));
      }
      StepResult step = env.step(action);
      episode_reward += step.reward;
      const std::optional<std::size_t> next_passive =
          step.next ? std::optional<std::size_t>(state + 1) : std::nullopt;
      window.push({std::move(token), action, step.reward, step.next}, next_passive);

      std::fill(critic_grad.begin(), critic_grad.end(), 0.0);
      std::fill(actor_grad.begin(), actor_grad.end(), 0.0);
      const double critic_loss =
          detail::td_loss(qp, window.items(), targets.targets(window, config.gamma), critic_grad, &q_taken);
      const double actor_loss = detail::policy_loss(actor, window.items(), q_taken, actor_grad);
      loss = critic_loss + actor_loss;
      detail::check_finite_loss(loss, iteration, epsilon, result.curve);
      adam_step(qp, critic_adam, critic_grad);
      adam_step(actor, actor_adam, actor_grad);

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
      greedy = tewl(instance, predict_placement(instance, actor, config.mode, PolicyKind::Actor));
    result.curve.push_back({iteration, epsilon, loss, episode_reward, greedy});
  }

  result.placement = predict_placement(instance, actor, config.mode, PolicyKind::Actor);
  result.metrics = evaluate_metrics(instance, result.placement);
  result.q_network = std::move(qp);
  result.actor = std::move(actor);
  result.seconds = detail::seconds_since(start);
  return result;
}

} // namespace pcbplace
