// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pcbplace/error.hpp"
#include "pcbplace/metrics.hpp"

using namespace pcbplace;

namespace {

// Pin scan written against the raw data, not the library's helpers.
double reference_tewl(const InstanceData &d, const std::vector<std::size_t> &slots) {
  double total = 0.0;
  for (std::size_t p = 0; p < d.passives.size(); ++p) {
    if (d.excluded_nets.count(d.passives[p].net))
      continue;
    const double cx = d.slots[slots[p]].x + d.passives[p].dims.x / 2;
    const double cy = d.slots[slots[p]].y + d.passives[p].dims.y / 2;
    double best = INFINITY;
    for (const Pin &pin : d.pins)
      if (pin.net == d.passives[p].net)
        best = std::min(best, std::abs(cx - pin.pos.x) + std::abs(cy - pin.pos.y));
    total += best;
  }
  return total;
}

PcbInstance squares(std::size_t m, std::vector<Vec2> slots, Vec2 dims = {1, 1}) {
  InstanceData d;
  d.name = "squares";
  d.main_footprint = {{-10, -10}, 1, 1};
  d.pins = {{"P", {-9, -9}, "A"}};
  for (std::size_t i = 0; i < m; ++i)
    d.passives.push_back({"C" + std::to_string(i), i, dims, "A"});
  d.slots = std::move(slots);
  return PcbInstance(std::move(d));
}

std::vector<std::size_t> random_slots(const PcbInstance &inst, Rng &rng) {
  std::vector<std::size_t> s(inst.passive_count());
  for (auto &x : s)
    x = rng.below(inst.action_count());
  return s;
}

} // namespace

TEST_CASE("coincident center and pin contributes zero") {
  InstanceData d;
  d.name = "zero";
  d.main_footprint = {{4, 2}, 2, 2};
  d.pins = {{"P", {4, 2}, "A"}};
  d.passives = {{"C", 0, {2, 2}, "A"}};
  d.slots = {{3, 1}};
  const PcbInstance inst(d);
  CHECK(placed_center(inst, 0, 0) == Vec2{4, 2});
  CHECK(tewl(inst, Placement::from_slots(std::vector<std::size_t>{0})) == 0.0);
}

TEST_CASE("tiny instance wirelengths") {
  const PcbInstance inst = testing::tiny_instance();
  CHECK(wire_contribution(inst, 0, 0) == 5.5);
  CHECK(wire_contribution(inst, 1, 1) == 6.0);
  CHECK(wire_contribution(inst, 2, 2) == 3.0);
  CHECK(tewl(inst, Placement::from_slots(std::vector<std::size_t>{0, 1, 2})) == testing::kTinyOptimalTewl);
  CHECK_THROWS_AS(tewl(inst, Placement(3)), IncompletePlacementError);
}

TEST_CASE("nearest pin ties go to the lower index") {
  InstanceData d;
  d.name = "tie";
  d.main_footprint = {{0, 0}, 4, 4};
  d.pins = {{"X", {0, 2}, "B"}, {"P", {4, 1}, "A"}, {"Q", {4, 3}, "A"}};
  d.passives = {{"C", 0, {2, 2}, "A"}};
  d.slots = {{5, 1}};
  const PcbInstance inst(d);
  CHECK(*nearest_pin(inst, 0, 0) == 1);
  CHECK(wire_contribution(inst, 0, 0) == 3.0);
}

TEST_CASE("excluded nets add nothing") {
  InstanceData d = testing::tiny_instance().to_data();
  d.pins.push_back({"G", {12, 10}, "GND"});
  d.passives[1].net = "GND";
  d.excluded_nets = {"GND"};
  const PcbInstance inst(d);
  for (std::size_t a = 0; a < 5; ++a)
    CHECK(wire_contribution(inst, 1, a) == 0.0);
  CHECK_FALSE(nearest_pin(inst, 1, 0).has_value());
}

TEST_CASE("tewl matches an independent pin scan") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    Rng rng(seed * 7 + 1);
    const auto slots = random_slots(inst, rng);
    CHECK(tewl(inst, Placement::from_slots(slots)) == reference_tewl(inst.to_data(), slots));
  }
}

TEST_CASE("tewl is translation invariant") {
  // Grid-aligned shifts keep every coordinate exact.
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    Rng rng(seed);
    const Vec2 shift{std::round(rng.uniform(-50, 50)) / 4.0, std::round(rng.uniform(-50, 50)) / 4.0};
    const PcbInstance moved = testing::translated(inst, shift);
    const Placement p = Placement::from_slots(random_slots(inst, rng));
    CHECK(tewl(inst, p) == doctest::Approx(tewl(moved, p)).epsilon(1e-12));
  }
}

TEST_CASE("adding a same-net pin never increases tewl") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    Rng rng(seed + 1000);
    const Placement p = Placement::from_slots(random_slots(inst, rng));
    InstanceData d = inst.to_data();
    d.pins.push_back({"EXTRA", {10.0 + rng.uniform(0, 10), 10.0 + rng.uniform(0, 10)}, d.passives[0].net});
    CHECK(tewl(PcbInstance(d), p) <= tewl(inst, p));
  }
}

TEST_CASE("overlap counts") {
  CHECK(count_overlaps(squares(2, {{0, 0}, {1, 0}}), Placement::from_slots(std::vector<std::size_t>{0, 1})) == 0);
  CHECK(count_overlaps(squares(2, {{0, 0}, {0.5, 0.5}}), Placement::from_slots(std::vector<std::size_t>{0, 1})) ==
        1);
  for (std::size_t m = 1; m <= 6; ++m) {
    std::vector<Vec2> slots;
    for (std::size_t i = 0; i < m; ++i)
      slots.push_back({3.0 * i, 0});
    const PcbInstance inst = squares(m, slots);
    const Placement stacked = Placement::from_slots(std::vector<std::size_t>(m, 0));
    // Pairwise enumeration of the stacked rectangles.
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b)
        pairs += intersection_area(placed_rect(inst, a, 0), placed_rect(inst, b, 0)) > 0.0;
    CHECK(count_overlaps(inst, stacked) == m * (m - 1) / 2);
    CHECK(count_overlaps(inst, stacked) == pairs);
  }
}

TEST_CASE("segment crossings") {
  CHECK_FALSE(segments_cross({{0, 0}, {2, 0}}, {{0, 1}, {2, 1}}));
  CHECK(segments_cross({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}));
  CHECK_FALSE(segments_cross({{0, 0}, {1, 1}}, {{1, 1}, {2, 0}}));
  CHECK_FALSE(segments_cross({{0, 0}, {2, 0}}, {{1, 0}, {1, 1}}));  // T junction
  CHECK_FALSE(segments_cross({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}}));  // collinear

  // Four passives around one shared pin: every pair shares an endpoint.
  InstanceData d;
  d.name = "star";
  d.main_footprint = {{-1, -1}, 2, 2};
  d.pins = {{"P", {0, 0}, "A"}};
  for (std::size_t i = 0; i < 4; ++i)
    d.passives.push_back({"C" + std::to_string(i), i, {1, 1}, "A"});
  d.slots = {{2, -0.5}, {-3, -0.5}, {-0.5, 2}, {-0.5, -3}};
  const PcbInstance star(d);
  const Placement p = Placement::from_slots(std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(count_crossings(star, p) == 0);
}

TEST_CASE("crossing count on a crossed pair") {
  InstanceData d;
  d.name = "cross";
  d.main_footprint = {{0, 0}, 4, 4};
  d.pins = {{"PA", {4, 0}, "A"}, {"PB", {4, 4}, "B"}};
  d.passives = {{"CA", 0, {1, 1}, "A"}, {"CB", 1, {1, 1}, "B"}};
  d.slots = {{5, 4}, {5, -1.5}};
  const PcbInstance inst(d);
  CHECK(count_crossings(inst, Placement::from_slots(std::vector<std::size_t>{0, 1})) == 1);
  CHECK(count_crossings(inst, Placement::from_slots(std::vector<std::size_t>{1, 0})) == 0);
}

TEST_CASE("metrics report and CSV") {
  const PcbInstance inst = testing::tiny_instance();
  const MetricsReport r = evaluate_metrics(inst, Placement::from_slots(std::vector<std::size_t>{0, 1, 2}));
  CHECK(r.tewl == 14.5);
  CHECK(r.overlap_pairs == 0);
  REQUIRE(r.per_passive.size() == 3);
  CHECK(r.per_passive[2].wire == 3.0);
  CHECK(metrics_csv_header() == "name,method,tewl,overlap_pairs,crossing_count,seconds");
  CHECK(metrics_csv_row("tiny", "sa", r, 0.25) == "tiny,sa,14.500000,0,0,0.250");
}
