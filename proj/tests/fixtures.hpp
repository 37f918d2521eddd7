// SPDX-License-Identifier: Apache-2.0
// Hand-built instances shared by the test suites.
#pragma once

#include <string>
#include <vector>

#include "pcbplace/model.hpp"
#include "pcbplace/rng.hpp"

namespace pcbplace::testing {

inline InstanceData base_data() {
  InstanceData d;
  d.name = "fixture";
  d.main_footprint = {{10.0, 10.0}, 10.0, 10.0};
  return d;
}

/// Three passives, five slots; each net's single pin has a distinct nearest
/// slot, and that assignment is also the TEWL minimum (5.5 + 6 + 3 = 14.5).
inline PcbInstance tiny_instance() {
  InstanceData d = base_data();
  d.name = "tiny";
  d.pins = {{"PA", {10.0, 15.0}, "NET_A"}, {"PB", {15.0, 10.0}, "NET_B"}, {"PC", {20.0, 15.0}, "NET_C"}};
  d.passives = {{"C1", 0, {2.0, 1.0}, "NET_A"}, {"C2", 1, {1.0, 1.0}, "NET_B"}, {"C3", 2, {2.0, 2.0}, "NET_C"}};
  d.slots = {{4.0, 14.0}, {14.0, 4.0}, {22.0, 14.0}, {14.0, 22.0}, {4.0, 4.0}};
  return PcbInstance(std::move(d));
}

inline constexpr double kTinyOptimalTewl = 14.5;

/// Random small instance with every slot on the ring outside the footprint.
/// Used by property tests; M <= max_passives and N = M + extra slots.
inline PcbInstance random_instance(std::uint64_t seed, std::size_t max_passives = 5, std::size_t max_extra = 3) {
  Rng rng(seed);
  InstanceData d = base_data();
  d.name = "rand" + std::to_string(seed);
  const std::size_t m = 1 + rng.below(max_passives);
  const std::size_t n = m + rng.below(max_extra + 1);
  const std::size_t nets = 1 + rng.below(m);
  for (std::size_t k = 0; k < nets; ++k) {
    const std::size_t pins = 1 + rng.below(3);
    for (std::size_t t = 0; t < pins; ++t) {
      // Pins anywhere on the footprint, boundary included.
      const double x = 10.0 + std::round(rng.uniform(0.0, 10.0) * 8.0) / 8.0;
      const double y = 10.0 + std::round(rng.uniform(0.0, 10.0) * 8.0) / 8.0;
      d.pins.push_back({"P" + std::to_string(d.pins.size()), {x, y}, "N" + std::to_string(k)});
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    const Vec2 dims{0.25 + std::round(rng.uniform(0.0, 2.0) * 4.0) / 4.0,
                    0.25 + std::round(rng.uniform(0.0, 2.0) * 4.0) / 4.0};
    d.passives.push_back({"C" + std::to_string(i), i, dims, "N" + std::to_string(i < nets ? i : rng.below(nets))});
  }
  // Slots on a ring of 3 mm cells around the footprint, chosen without
  // replacement.
  std::vector<Vec2> ring;
  for (int i = 0; i < 7; ++i) {
    ring.push_back({5.0 + 3.0 * i, 5.0});
    ring.push_back({5.0 + 3.0 * i, 22.0});
  }
  for (int j = 1; j < 6; ++j) {
    ring.push_back({5.0, 5.0 + 3.0 * j});
    ring.push_back({22.0, 5.0 + 3.0 * j});
  }
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t pick = rng.below(ring.size());
    d.slots.push_back(ring[pick]);
    ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return PcbInstance(std::move(d));
}

inline PcbInstance translated(const PcbInstance &instance, Vec2 shift) {
  InstanceData d = instance.to_data();
  d.main_footprint.origin = d.main_footprint.origin + shift;
  for (Pin &p : d.pins)
    p.pos = p.pos + shift;
  for (Vec2 &s : d.slots)
    s = s + shift;
  return PcbInstance(std::move(d));
}

} // namespace pcbplace::testing
