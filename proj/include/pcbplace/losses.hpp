// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcbplace/mlp.hpp"
#include "pcbplace/model.hpp"

namespace pcbplace {

/// One (s, a, r, s') sample. An empty `next_state` marks a terminal step.
struct Transition {
  StateToken state;
  std::size_t action = 0;
  double reward = 0.0;
  std::optional<StateToken> next_state;
};

std::vector<double> softmax(std::span<const double> logits);

/// log(softmax(logits)) computed with the max logit subtracted first.
std::vector<double> log_softmax(std::span<const double> logits);

struct DqnLoss {
  double loss = 0.0;
  std::vector<double> grad_qp;
};

/// Mean squared TD error of `qp` against the frozen target `qt`:
/// (r + gamma * max_a' qt(s', a') - qp(s, a))^2, the bootstrap term dropped
/// on terminal steps. Gradients are taken with respect to qp only.
DqnLoss dqn_loss(const Mlp &qp, const Mlp &qt, std::span<const Transition> batch, double gamma);

struct AcLoss {
  double loss = 0.0;
  double policy_loss = 0.0;
  double critic_loss = 0.0;
  std::vector<double> grad_actor;
  std::vector<double> grad_qp;
};

/// Mean of -log pi(a|s) * qp(s, a) over the batch plus the DQN loss. The
/// critic value in the policy term is a constant weight, so the policy term
/// contributes no gradient to qp.
AcLoss ac_loss(const Mlp &actor, const Mlp &qp, const Mlp &qt, std::span<const Transition> batch, double gamma);

/// Largest relative error between `analytic` and central differences of
/// `loss` over every entry of `params` (restored afterwards). Relative error
/// is |a - n| / max(|a|, |n|, 1e-6).
double max_relative_error(std::span<double> params, std::span<const double> analytic,
                          const std::function<double()> &loss, double step = 1e-5);

struct GradCheckReport {
  std::string name;
  double max_relative_error = 0.0;
};

/// Seeded checks on random 8-8-8-8-6 networks and batches. `corrupt`
/// perturbs the analytic gradient, for exercising the failure path.
GradCheckReport gradcheck_dqn(std::uint64_t seed, bool corrupt = false);
GradCheckReport gradcheck_ac(std::uint64_t seed, bool corrupt = false);
/// Quadratic toy loss 0.5 * sum(c_i * w_i^2) with known gradient.
GradCheckReport gradcheck_quadratic(std::uint64_t seed);

} // namespace pcbplace
