// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "pcbplace/agents.hpp"
#include "pcbplace/generator.hpp"
#include "pcbplace/losses.hpp"

using namespace pcbplace;

namespace {

// M = 2, N = 3. With K = 1 the Γ slots are 0 and 2, pairwise distant.
PcbInstance two_passives() {
  InstanceData d = testing::base_data();
  d.name = "two";
  d.pins = {{"PA", {10, 15}, "A"}, {"PB", {20, 15}, "B"}};
  d.passives = {{"C1", 0, {1, 1}, "A"}, {"C2", 1, {1, 1}, "B"}};
  d.slots = {{7, 14.5}, {14.5, 22}, {21, 14.5}};
  return PcbInstance(std::move(d));
}

TrainConfig short_config(std::uint64_t seed, EncodingMode mode = EncodingMode::PassiveOnly) {
  TrainConfig c;
  c.seed = seed;
  c.mode = mode;
  c.max_iterations = 4000;
  c.epsilon_horizon = 3000;
  c.target_update_period = 200;
  c.reward = {0.0, 1};
  c.hidden = {32, 16, 16};
  return c;
}

// Independent masked greedy: for each row scan all free slots.
std::vector<std::size_t> simulate_masked(const std::vector<std::vector<double>> &q) {
  std::vector<bool> used(q[0].size(), false);
  std::vector<std::size_t> out;
  for (const auto &row : q) {
    std::size_t best = row.size();
    for (std::size_t a = 0; a < row.size(); ++a)
      if (!used[a] && (best == row.size() || row[a] > row[best]))
        best = a;
    used[best] = true;
    out.push_back(best);
  }
  return out;
}

double entropy(const std::vector<double> &p) {
  double h = 0.0;
  for (const double x : p)
    if (x > 0)
      h -= x * std::log(x);
  return h;
}

} // namespace

TEST_CASE("epsilon schedule") {
  TrainConfig c;
  CHECK(epsilon_at(c, 0) == doctest::Approx(0.9));
  CHECK(epsilon_at(c, c.epsilon_horizon) == doctest::Approx(0.1));
  CHECK(epsilon_at(c, 5 * c.epsilon_horizon) == doctest::Approx(0.1));
  CHECK(epsilon_at(c, c.epsilon_horizon / 2) == doctest::Approx(0.5));
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    TrainConfig r;
    r.epsilon_start = rng.uniform(0.2, 1.0);
    r.epsilon_end = rng.uniform(0.0, r.epsilon_start);
    r.epsilon_horizon = 1 + rng.below(5000);
    double prev = r.epsilon_start;
    for (std::size_t t = 0; t < r.epsilon_horizon + 50; t += 1 + rng.below(40)) {
      const double e = epsilon_at(r, t);
      CHECK(e <= prev + 1e-15);
      CHECK(e >= r.epsilon_end - 1e-15);
      CHECK(e <= r.epsilon_start + 1e-15);
      prev = e;
    }
  }
}

TEST_CASE("config validation") {
  TrainConfig c;
  CHECK_NOTHROW(validate(c));
  c.gamma = 1.5;
  CHECK_THROWS_AS(validate(c), ValidationError);
  c = {};
  c.minibatch = 0;
  CHECK_THROWS_AS(validate(c), ValidationError);
  SaConfig s;
  CHECK_NOTHROW(validate(s));
  s.cooling_rate = 1.5;
  CHECK_THROWS_AS(validate(s), ValidationError);
}

TEST_CASE("masked greedy decoding") {
  SUBCASE("distinct maxima") {
    const std::vector<double> q{0, 5, 1, 9, 0, 0, 2, 0, 0};
    CHECK(masked_greedy(q, 3, 3).dense() == std::vector<std::size_t>{1, 0, 2});
  }
  SUBCASE("collision moves the second state") {
    const std::vector<std::vector<double>> rows{{1, 9, 3, 0}, {2, 8, 7, 1}, {0, 9, 5, 6}};
    std::vector<double> flat;
    for (const auto &r : rows)
      flat.insert(flat.end(), r.begin(), r.end());
    CHECK(masked_greedy(flat, 3, 4).dense() == simulate_masked(rows));
    CHECK(masked_greedy(flat, 3, 4).dense() == std::vector<std::size_t>{1, 2, 3});
  }
  SUBCASE("all equal") {
    CHECK(masked_greedy(std::vector<double>(4 * 6, 0.5), 4, 6).dense() == std::vector<std::size_t>{0, 1, 2, 3});
  }
  SUBCASE("random tables match the simulation") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      Rng rng(seed);
      const std::size_t m = 1 + rng.below(6), n = m + rng.below(4);
      std::vector<std::vector<double>> rows(m, std::vector<double>(n));
      std::vector<double> flat;
      for (auto &r : rows)
        for (double &x : r) {
          x = std::round(rng.uniform(0, 4));  // plenty of ties
          flat.push_back(x);
        }
      const Placement p = masked_greedy(flat, m, n);
      CHECK(p.injective());
      CHECK(p.dense() == simulate_masked(rows));
    }
  }
}

TEST_CASE("brute-force oracle") {
  SUBCASE("tiny instance enumerates 60 assignments") {
    const OracleResult r = brute_force_oracle(testing::tiny_instance(), OracleObjective::Tewl);
    CHECK(r.enumerated == 60);
    CHECK(r.value == testing::kTinyOptimalTewl);
    CHECK(r.assignment == std::vector<std::size_t>{0, 1, 2});
    CHECK(r.optimum_count == 1);
    const OracleResult rs = brute_force_oracle(testing::tiny_instance(), OracleObjective::RewardSum, {0.6, 1});
    CHECK(rs.value == doctest::Approx(3.0));
    CHECK(rs.assignment == std::vector<std::size_t>{0, 1, 2});
    CHECK(rs.optimum_count == 1);
  }
  SUBCASE("single passive takes the scanned minimum") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const PcbInstance inst = testing::random_instance(seed, 1, 6);
      std::size_t best = 0;
      for (std::size_t a = 1; a < inst.action_count(); ++a)
        if (wire_contribution(inst, 0, a) < wire_contribution(inst, 0, best))
          best = a;
      const OracleResult r = brute_force_oracle(inst, OracleObjective::Tewl);
      CHECK(r.assignment == std::vector<std::size_t>{best});
      CHECK(r.enumerated == inst.action_count());
    }
  }
  SUBCASE("too large") {
    CHECK_THROWS_AS(brute_force_oracle(generate_synthetic(*preset_spec("u4")), OracleObjective::Tewl),
                    OracleScaleError);
  }
}

TEST_CASE("SA acceptance rule") {
  CHECK(sa_acceptance_probability(0.0, 3.0) == 1.0);
  CHECK(sa_acceptance_probability(-2.0, 3.0) == 1.0);
  CHECK(sa_acceptance_probability(3.0, 3.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(sa_acceptance_probability(3.0, 3.0) == doctest::Approx(0.3679).epsilon(1e-4));
}

TEST_CASE("mean pairwise slot distance") {
  InstanceData d = testing::base_data();
  d.pins = {{"P", {10, 12}, "A"}};
  d.passives = {{"C", 0, {1, 1}, "A"}};
  d.slots = {{0, 0}, {3, 0}, {0, 4}};
  CHECK(mean_pairwise_slot_distance(PcbInstance(d)) == doctest::Approx((3.0 + 4.0 + 5.0) / 3.0));
}

TEST_CASE("SA finds the tiny optimum and keeps a monotone best trace") {
  SaConfig c;
  c.iterations = 20000;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    c.seed = seed;
    const TrainResult r = run_sa(inst, c);
    CHECK(r.placement.injective());
    CHECK(r.placement.complete());
    CHECK(r.metrics.tewl == tewl(inst, r.placement));
    REQUIRE_FALSE(r.sa_trace.empty());
    for (std::size_t i = 1; i < r.sa_trace.size(); ++i) {
      CHECK(r.sa_trace[i].best_tewl <= r.sa_trace[i - 1].best_tewl);
      CHECK(r.sa_trace[i].best_tewl <= r.sa_trace[i].current_tewl);
    }
    CHECK(r.sa_trace.back().best_tewl == r.metrics.tewl);
    CHECK(brute_force_oracle(inst, OracleObjective::Tewl).value <= r.metrics.tewl);
  }
}

TEST_CASE("SA is deterministic per seed") {
  SaConfig c;
  c.iterations = 5000;
  c.acceptance = SaAcceptance::AgainstCurrent;
  const PcbInstance inst = testing::random_instance(42, 5, 5);
  const TrainResult a = run_sa(inst, c), b = run_sa(inst, c);
  CHECK(a.placement == b.placement);
  REQUIRE(a.sa_trace.size() == b.sa_trace.size());
  for (std::size_t i = 0; i < a.sa_trace.size(); ++i)
    CHECK(a.sa_trace[i].current_tewl == b.sa_trace[i].current_tewl);
}

TEST_CASE("DQN learns the Gamma slots on a two-passive instance") {
  const PcbInstance inst = two_passives();
  const RewardTable g = build_gamma(inst, {0.0, 1});
  REQUIRE(g.topk(0) == std::vector<std::size_t>{0});
  REQUIRE(g.topk(1) == std::vector<std::size_t>{2});
  const OracleResult oracle = brute_force_oracle(inst, OracleObjective::RewardSum, {0.0, 1});
  REQUIRE(oracle.enumerated == 6);
  REQUIRE(oracle.optimum_count == 1);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const TrainResult r = train_dqn(inst, short_config(seed));
    CHECK(r.method == "dqn");
    CHECK(r.placement.injective());
    hits += r.placement.dense() == oracle.assignment;
  }
  CHECK(hits >= 2);
}

TEST_CASE("DQN with net tokens on an excluded-net passive") {
  InstanceData d = two_passives().to_data();
  d.pins.push_back({"G", {15, 10}, "GND"});
  d.passives.push_back({"C3", 2, {1, 1}, "GND"});
  d.slots.push_back({14.5, 7});
  d.excluded_nets = {"GND"};
  const PcbInstance inst(d);
  const TrainResult r = train_dqn(inst, short_config(1, EncodingMode::PassiveNet));
  CHECK(r.method == "dqnnet");
  CHECK(r.placement.injective());
  CHECK(r.placement.complete());
  CHECK(r.q_network->all_finite());
}

TEST_CASE("A2C learns the oracle assignment") {
  const PcbInstance inst = two_passives();
  const OracleResult oracle = brute_force_oracle(inst, OracleObjective::RewardSum, {0.0, 1});
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const TrainResult r = train_a2c(inst, short_config(seed));
    CHECK(r.method == "a2c");
    REQUIRE(r.actor.has_value());
    CHECK(predict_placement(inst, *r.actor, EncodingMode::PassiveOnly, PolicyKind::Actor) == r.placement);
    hits += r.placement.dense() == oracle.assignment;
  }
  CHECK(hits >= 2);
}

TEST_CASE("A2C policy starts near uniform") {
  const PcbInstance inst = testing::random_instance(7, 5, 3);
  TrainConfig c = short_config(3);
  c.max_iterations = 0;
  const TrainResult r = train_a2c(inst, c);
  REQUIRE(r.actor.has_value());
  for (std::size_t s = 0; s < inst.passive_count(); ++s) {
    const auto p = softmax(r.actor->forward(encode_state(inst, s, EncodingMode::PassiveOnly).as_input()));
    CHECK(entropy(p) == doctest::Approx(std::log(double(inst.action_count()))).epsilon(0.01));
  }
}

TEST_CASE("training is reproducible per seed") {
  const PcbInstance inst = testing::tiny_instance();
  TrainConfig c = short_config(5);
  c.max_iterations = 1500;
  for (const bool actor_critic : {false, true}) {
    const TrainResult a = actor_critic ? train_a2c(inst, c) : train_dqn(inst, c);
    const TrainResult b = actor_critic ? train_a2c(inst, c) : train_dqn(inst, c);
    CHECK(a.placement == b.placement);
    REQUIRE(a.curve.size() == b.curve.size());
    for (std::size_t i = 0; i < a.curve.size(); ++i) {
      CHECK(a.curve[i].loss == b.curve[i].loss);
      CHECK(a.curve[i].episode_reward == b.curve[i].episode_reward);
    }
    CHECK(*a.q_network == *b.q_network);
  }
}

TEST_CASE("every trained placement is injective and complete") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    TrainConfig c = short_config(seed, seed % 2 ? EncodingMode::PassiveNet : EncodingMode::PassiveOnly);
    c.max_iterations = 300;
    c.reward = {};
    for (const TrainResult &r : {train_dqn(inst, c), train_a2c(inst, c)}) {
      CHECK(r.placement.injective());
      CHECK(r.placement.complete());
      CHECK(r.metrics.tewl >= brute_force_oracle(inst, OracleObjective::Tewl).value);
    }
  }
}
