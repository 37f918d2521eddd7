// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/agents.hpp"

namespace pcbplace {

Placement masked_greedy(std::span<const double> scores, std::size_t passives, std::size_t actions) {
  if (scores.size() != passives * actions)
    throw ShapeError("score table must be passives x actions");
  if (actions < passives)
    throw ShapeError("masked decoding needs at least as many slots as passives");
  std::vector<bool> taken(actions, false);
  Placement placement(passives);
  for (std::size_t s = 0; s < passives; ++s) {
    const double *row = scores.data() + s * actions;
    std::size_t best = actions;
    for (std::size_t a = 0; a < actions; ++a)
      if (!taken[a] && (best == actions || row[a] > row[best]))
        best = a;
    taken[best] = true;
    placement.assign(s, best);
  }
  return placement;
}

Placement predict_placement(const PcbInstance &instance, const Mlp &net, EncodingMode mode, PolicyKind) {
  const std::size_t m = instance.passive_count();
  const std::size_t n = instance.action_count();
  if (net.output_size() != n || net.input_size() != token_width(instance, mode))
    throw ShapeError("network shape does not match the instance");
  std::vector<double> scores;
  scores.reserve(m * n);
  for (std::size_t s = 0; s < m; ++s) {
    const std::vector<double> out = net.forward(encode_state(instance, s, mode).as_input());
    scores.insert(scores.end(), out.begin(), out.end());
  }
  return masked_greedy(scores, m, n);
}

} // namespace pcbplace
