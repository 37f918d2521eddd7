// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/losses.hpp"

#include <algorithm>
#include <cmath>

#include "loss_core.hpp"
#include "pcbplace/error.hpp"

namespace pcbplace {

std::vector<double> log_softmax(std::span<const double> logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (const double z : logits)
    sum += std::exp(z - top);
  const double log_norm = top + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i)
    out[i] = logits[i] - log_norm;
  return out;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out = log_softmax(logits);
  for (double &v : out)
    v = std::exp(v);
  return out;
}

namespace detail {

double td_loss(const Mlp &qp, std::span<const Transition> batch, std::span<const double> targets,
               std::span<double> grad, std::vector<double> *q_taken) {
  const double scale = 1.0 / static_cast<double>(batch.size());
  Mlp::Activations acts;
  std::vector<double> dout(qp.output_size(), 0.0);
  double loss = 0.0;
  if (q_taken)
    q_taken->clear();
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Transition &t = batch[i];
    qp.forward(t.state.as_input(), acts);
    const double q = acts.output()[t.action];
    if (q_taken)
      q_taken->push_back(q);
    const double residual = targets[i] - q;
    loss += scale * residual * residual;
    dout[t.action] = -2.0 * scale * residual;
    qp.backward(acts, dout, grad);
    dout[t.action] = 0.0;
  }
  return loss;
}

double policy_loss(const Mlp &actor, std::span<const Transition> batch, std::span<const double> weights,
                   std::span<double> grad) {
  const double scale = 1.0 / static_cast<double>(batch.size());
  Mlp::Activations acts;
  std::vector<double> dlogits(actor.output_size());
  double loss = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const Transition &t = batch[i];
    actor.forward(t.state.as_input(), acts);
    const std::vector<double> logp = log_softmax(acts.output());
    loss -= scale * logp[t.action] * weights[i];
    for (std::size_t j = 0; j < dlogits.size(); ++j)
      dlogits[j] = scale * weights[i] * (std::exp(logp[j]) - (j == t.action ? 1.0 : 0.0));
    actor.backward(acts, dlogits, grad);
  }
  return loss;
}

} // namespace detail

namespace {

void check_batch(const Mlp &qp, const Mlp &qt, std::span<const Transition> batch) {
  if (batch.empty())
    throw ShapeError("loss needs a non-empty batch");
  if (qp.layer_dims() != qt.layer_dims())
    throw ShapeError("predictor and target networks differ in shape");
  for (const Transition &t : batch)
    if (t.action >= qp.output_size())
      throw ShapeError("transition action " + std::to_string(t.action) + " exceeds network output width");
}

std::vector<double> bootstrap_targets(const Mlp &qt, std::span<const Transition> batch, double gamma) {
  std::vector<double> targets;
  targets.reserve(batch.size());
  for (const Transition &t : batch) {
    if (!t.next_state) {
      targets.push_back(t.reward);
      continue;
    }
    const std::vector<double> next = qt.forward(t.next_state->as_input());
    targets.push_back(t.reward + gamma * *std::max_element(next.begin(), next.end()));
  }
  return targets;
}

} // namespace

DqnLoss dqn_loss(const Mlp &qp, const Mlp &qt, std::span<const Transition> batch, double gamma) {
  check_batch(qp, qt, batch);
  DqnLoss out;
  out.grad_qp.assign(qp.parameter_count(), 0.0);
  out.loss = detail::td_loss(qp, batch, bootstrap_targets(qt, batch, gamma), out.grad_qp);
  return out;
}

AcLoss ac_loss(const Mlp &actor, const Mlp &qp, const Mlp &qt, std::span<const Transition> batch, double gamma) {
  check_batch(qp, qt, batch);
  if (actor.output_size() != qp.output_size() || actor.input_size() != qp.input_size())
    throw ShapeError("actor and critic disagree on state or action width");
  AcLoss out;
  out.grad_qp.assign(qp.parameter_count(), 0.0);
  out.grad_actor.assign(actor.parameter_count(), 0.0);
  std::vector<double> q_taken;
  out.critic_loss = detail::td_loss(qp, batch, bootstrap_targets(qt, batch, gamma), out.grad_qp, &q_taken);
  out.policy_loss = detail::policy_loss(actor, batch, q_taken, out.grad_actor);
  out.loss = out.policy_loss + out.critic_loss;
  return out;
}

} // namespace pcbplace
