// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/agents.hpp"

namespace pcbplace {

namespace {

struct Search {
  const PcbInstance &instance;
  OracleObjective objective;
  RewardConfig reward;
  std::size_t m;
  std::size_t n;
  std::vector<double> wire;       // m x n, OracleObjective::Tewl
  std::optional<RewardTable> gamma;
  std::vector<std::size_t> current;
  std::vector<bool> used;
  OracleResult result;
  bool have_best = false;

  bool better(double v) const { return objective == OracleObjective::Tewl ? v < result.value : v > result.value; }

  double step_value(std::size_t s, std::size_t a) const {
    if (objective == OracleObjective::Tewl)
      return wire[s * n + a];
    const Vec2 here = instance.slots()[a].anchor;
    const double d = overlap_threshold(instance.passives()[s]);
    double clear = 1.0;
    for (std::size_t prev = 0; prev < s; ++prev)
      if (!(euclidean_distance(here, instance.slots()[current[prev]].anchor) > d)) {
        clear = 0.0;
        break;
      }
    const double prox = gamma->positive(s, a) ? 1.0 : 0.0;
    return reward.alpha * clear + (1.0 - reward.alpha) * prox;
  }

  void visit(std::size_t s, double acc) {
    if (s == m) {
      ++result.enumerated;
      if (!have_best || better(acc)) {
        have_best = true;
        result.value = acc;
        result.assignment = current;
        result.optimum_count = 1;
      } else if (acc == result.value) {
        ++result.optimum_count;
      }
      return;
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (used[a])
        continue;
      used[a] = true;
      current[s] = a;
      visit(s + 1, acc + step_value(s, a));
      used[a] = false;
    }
  }
};

} // namespace

OracleResult brute_force_oracle(const PcbInstance &instance, OracleObjective objective, const RewardConfig &reward) {
  const std::size_t m = instance.passive_count();
  const std::size_t n = instance.action_count();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    total *= n - i;
    if (total > kOracleLimit)
      throw OracleScaleError("oracle scale exceeded: more than " + std::to_string(kOracleLimit) +
                             " injective assignments");
  }

  Search search{instance, objective, reward, m, n, {}, std::nullopt, std::vector<std::size_t>(m), std::vector<bool>(n),
                {}, false};
  if (objective == OracleObjective::Tewl) {
    search.wire.resize(m * n);
    for (std::size_t s = 0; s < m; ++s)
      for (std::size_t a = 0; a < n; ++a)
        search.wire[s * n + a] = wire_contribution(instance, s, a);
  } else {
    search.gamma = build_gamma(instance, reward);
  }
  search.visit(0, 0.0);
  return search.result;
}

} // namespace pcbplace
