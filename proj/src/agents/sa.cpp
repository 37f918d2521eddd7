// SPDX-License-Identifier: Apache-2.0
#include <chrono>

#include "pcbplace/agents.hpp"
#include "pcbplace/rng.hpp"

namespace pcbplace {

namespace {

// Injective assignment with an O(1) free-slot list.
class Assignment {
public:
  Assignment(std::size_t m, std::size_t n, Rng &rng) : slots_(m), free_(n), free_pos_(n) {
    for (std::size_t a = 0; a < n; ++a) {
      free_[a] = a;
      free_pos_[a] = a;
    }
    for (std::size_t s = 0; s < m; ++s)
      occupy(s, free_[rng.below(free_.size())]);
  }

  const std::vector<std::size_t> &slots() const { return slots_; }
  std::size_t free_count() const { return free_.size(); }
  std::size_t free_slot(std::size_t i) const { return free_[i]; }

  void move(std::size_t s, std::size_t to) {
    release(slots_[s]);
    occupy(s, to);
  }

  void swap(std::size_t i, std::size_t j) { std::swap(slots_[i], slots_[j]); }

private:
  void occupy(std::size_t s, std::size_t slot) {
    const std::size_t pos = free_pos_[slot];
    const std::size_t last = free_.back();
    free_[pos] = last;
    free_pos_[last] = pos;
    free_.pop_back();
    slots_[s] = slot;
  }

  void release(std::size_t slot) {
    free_pos_[slot] = free_.size();
    free_.push_back(slot);
  }

  std::vector<std::size_t> slots_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> free_pos_;
};

} // namespace

TrainResult run_sa(const PcbInstance &instance, const SaConfig &config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t m = instance.passive_count();
  const std::size_t n = instance.action_count();

  std::vector<double> wire(m * n);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t a = 0; a < n; ++a)
      wire[s * n + a] = wire_contribution(instance, s, a);
  // Summed in passive order, matching tewl() bit for bit.
  auto cost = [&](const std::vector<std::size_t> &slots) {
    double total = 0.0;
    for (std::size_t s = 0; s < m; ++s)
      total += wire[s * n + slots[s]];
    return total;
  };

  Rng rng(config.seed);
  Assignment state(m, n, rng);
  double current = cost(state.slots());
  double best = current;
  std::vector<std::size_t> best_slots = state.slots();
  double temperature = config.initial_temperature.value_or(mean_pairwise_slot_distance(instance));

  TrainResult result;
  result.method = "sa";
  result.sa_trace.push_back({0, temperature, current, best});

  const bool can_swap = m >= 2;
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    const bool can_move = state.free_count() > 0;
    if (can_swap || can_move) {
      const bool do_swap = can_swap && (!can_move || rng.bernoulli(0.5));
      std::size_t i = rng.below(m), j = 0, from = 0;
      if (do_swap) {
        j = rng.below(m - 1);
        if (j >= i)
          ++j;
        state.swap(i, j);
      } else {
        from = state.slots()[i];
        state.move(i, state.free_slot(rng.below(state.free_count())));
      }
      const double proposed = cost(state.slots());
      bool accept = proposed < current;
      if (!accept) {
        const double reference = config.acceptance == SaAcceptance::AgainstBest ? best : current;
        accept = rng.uniform() < sa_acceptance_probability(proposed - reference, temperature);
      }
      if (accept) {
        current = proposed;
        if (current < best) {
          best = current;
          best_slots = state.slots();
        }
      } else if (do_swap) {
        state.swap(i, j);
      } else {
        state.move(i, from);
      }
    }
    temperature *= config.cooling_rate;
    if (it % config.trace_every == 0 || it == config.iterations)
      result.sa_trace.push_back({it, temperature, current, best});
  }

  result.placement = Placement::from_slots(best_slots);
  result.metrics = evaluate_metrics(instance, result.placement);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

} // namespace pcbplace
