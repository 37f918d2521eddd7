// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "pcbplace/error.hpp"
#include "pcbplace/losses.hpp"
#include "pcbplace/rng.hpp"

namespace pcbplace {

double max_relative_error(std::span<double> params, std::span<const double> analytic,
                          const std::function<double()> &loss, double step) {
  if (params.size() != analytic.size())
    throw ShapeError("gradient check: analytic gradient has the wrong size");
  double worst = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double saved = params[i];
    params[i] = saved + step;
    const double up = loss();
    params[i] = saved - step;
    const double down = loss();
    params[i] = saved;
    const double numeric = (up - down) / (2.0 * step);
    const double denom = std::max({std::abs(analytic[i]), std::abs(numeric), 1e-6});
    worst = std::max(worst, std::abs(analytic[i] - numeric) / denom);
  }
  return worst;
}

namespace {

const std::vector<std::size_t> kCheckDims{8, 8, 8, 8, 6};

std::vector<Transition> random_batch(Rng &rng, std::size_t count) {
  auto token = [&] {
    StateToken t;
    t.mode = EncodingMode::PassiveNet;
    t.bits.assign(kCheckDims.front(), 0);
    t.bits[rng.below(5)] = 1;
    t.bits[5 + rng.below(3)] = 1;
    return t;
  };
  std::vector<Transition> batch;
  for (std::size_t i = 0; i < count; ++i) {
    Transition t;
    t.state = token();
    t.action = rng.below(kCheckDims.back());
    t.reward = rng.uniform();
    if (i % 3 != 2)
      t.next_state = token();
    batch.push_back(std::move(t));
  }
  return batch;
}

// Moves the analytic gradient far enough to fail any sane threshold.
void corrupt_gradient(std::vector<double> &grad) {
  for (std::size_t i = 0; i < grad.size(); i += 7)
    grad[i] = grad[i] * 1.5 + 1e-2;
}

} // namespace

GradCheckReport gradcheck_dqn(std::uint64_t seed, bool corrupt) {
  Rng rng(seed);
  Mlp qp = Mlp::glorot(kCheckDims, seed * 3 + 1);
  const Mlp qt = Mlp::glorot(kCheckDims, seed * 3 + 2);
  const auto batch = random_batch(rng, 12);
  const double gamma = 0.96;
  DqnLoss analytic = dqn_loss(qp, qt, batch, gamma);
  if (corrupt)
    corrupt_gradient(analytic.grad_qp);
  const double err = max_relative_error(qp.parameters(), analytic.grad_qp,
                                        [&] { return dqn_loss(qp, qt, batch, gamma).loss; });
  return {"dqn_loss", err};
}

GradCheckReport gradcheck_ac(std::uint64_t seed, bool corrupt) {
  Rng rng(seed);
  Mlp actor = Mlp::glorot(kCheckDims, seed * 5 + 1);
  Mlp qp = Mlp::glorot(kCheckDims, seed * 5 + 2);
  const Mlp qt = Mlp::glorot(kCheckDims, seed * 5 + 3);
  auto batch = random_batch(rng, 12);
  for (Transition &t : batch)
    t.reward += 0.5;  // keeps critic weights in the policy term away from zero
  const double gamma = 0.96;
  AcLoss analytic = ac_loss(actor, qp, qt, batch, gamma);
  if (corrupt) {
    corrupt_gradient(analytic.grad_actor);
    corrupt_gradient(analytic.grad_qp);
  }
  const double actor_err = max_relative_error(actor.parameters(), analytic.grad_actor,
                                              [&] { return ac_loss(actor, qp, qt, batch, gamma).loss; });
  // With the critic weight detached, the critic's gradient is that of the
  // TD term alone.
  const double critic_err = max_relative_error(qp.parameters(), analytic.grad_qp,
                                               [&] { return dqn_loss(qp, qt, batch, gamma).loss; });
  return {"ac_loss", std::max(actor_err, critic_err)};
}

GradCheckReport gradcheck_quadratic(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(32), c(32), grad(32);
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = (rng.bernoulli(0.5) ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
    c[i] = rng.uniform(0.5, 3.0);
    grad[i] = c[i] * w[i];
  }
  auto loss = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
      s += 0.5 * c[i] * w[i] * w[i];
    return s;
  };
  return {"quadratic", max_relative_error(w, grad, loss)};
}

} // namespace pcbplace
