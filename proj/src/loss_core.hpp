// SPDX-License-Identifier: Apache-2.0
// Loss kernels shared by the public loss functions and the training loops.
// Training precomputes bootstrap targets, since the target network only
// changes at hard updates.
#pragma once

#include <span>
#include <vector>

#include "pcbplace/losses.hpp"

namespace pcbplace::detail {

/// Mean of (targets[i] - qp(s_i, a_i))^2; accumulates its gradient into
/// `grad`. When `q_taken` is non-null it receives qp(s_i, a_i).
double td_loss(const Mlp &qp, std::span<const Transition> batch, std::span<const double> targets,
               std::span<double> grad, std::vector<double> *q_taken = nullptr);

/// Mean of -log pi(a_i|s_i) * weights[i]; accumulates the actor gradient.
double policy_loss(const Mlp &actor, std::span<const Transition> batch, std::span<const double> weights,
                   std::span<double> grad);

} // namespace pcbplace::detail
