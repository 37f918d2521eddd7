// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "pcbplace/error.hpp"
#include "pcbplace/generator.hpp"
#include "pcbplace/instance_io.hpp"

using namespace pcbplace;

namespace {

const char *kMinimal = R"({
  "name": "minimal",
  "main": {"origin": [0, 0], "width": 4, "height": 4,
           "pins": [{"id": "P1", "pos": [4, 2], "net": "VCC"}]},
  "passives": [{"id": "C1", "dims": [1, 0.5], "net": "VCC"}],
  "slots": [[5, 1], [5, 3]]
})";

std::pair<double, double> dim_range(const PcbInstance &inst) {
  double lo = 1e300, hi = 0;
  for (const Passive &p : inst.passives()) {
    lo = std::min({lo, p.dims.x, p.dims.y});
    hi = std::max({hi, p.dims.x, p.dims.y});
  }
  return {lo, hi};
}

} // namespace

TEST_CASE("minimal file loads with one passive and two slots") {
  const PcbInstance inst = parse_instance(kMinimal);
  CHECK(inst.passive_count() == 1);
  CHECK(inst.action_count() == 2);
  CHECK(inst.net_count() == 1);
  CHECK(inst.name() == "minimal");
}

TEST_CASE("excluded ground net waives the pin requirement") {
  const PcbInstance inst = parse_instance(R"({
    "name": "gnd",
    "main": {"origin": [0, 0], "width": 4, "height": 4,
             "pins": [{"id": "P1", "pos": [4, 2], "net": "VCC"}]},
    "passives": [{"id": "C1", "dims": [1, 1], "net": "VCC"},
                 {"id": "C2", "dims": [1, 1], "net": "GND"}],
    "slots": [[5, 1], [5, 3], [-2, 1]],
    "excluded_nets": ["GND"]
  })");
  CHECK(inst.passive_count() == 2);
  CHECK(inst.is_excluded("GND"));
  CHECK_FALSE(inst.passive_net_index(1).has_value());
  CHECK(inst.pins_for_passive(1).empty());
  CHECK(inst.net_count() == 1);
}

TEST_CASE("validation errors") {
  SUBCASE("duplicate slot anchors") {
    InstanceData d = testing::tiny_instance().to_data();
    d.slots[1] = d.slots[0];
    CHECK_THROWS_AS(PcbInstance{d}, ConstraintViolation);
  }
  SUBCASE("passive net without pins") {
    InstanceData d = testing::tiny_instance().to_data();
    d.passives[0].net = "NOWHERE";
    CHECK_THROWS_AS(PcbInstance{d}, ConstraintViolation);
  }
  SUBCASE("fewer slots than passives") {
    InstanceData d = testing::tiny_instance().to_data();
    d.slots.resize(2);
    CHECK_THROWS_AS(PcbInstance{d}, ConstraintViolation);
  }
  SUBCASE("non-positive dims") {
    InstanceData d = testing::tiny_instance().to_data();
    d.passives[2].dims.y = 0.0;
    CHECK_THROWS_AS(PcbInstance{d}, ConstraintViolation);
  }
  SUBCASE("slot inside the footprint") {
    InstanceData d = testing::tiny_instance().to_data();
    d.slots[4] = {15.0, 15.0};
    CHECK_THROWS_AS(PcbInstance{d}, ConstraintViolation);
  }
  SUBCASE("pin outside the footprint") {
    InstanceData d = testing::tiny_instance().to_data();
    d.pins[0].pos = {0.0, 0.0};
    CHECK_THROWS_AS(PcbInstance{d}, ConstraintViolation);
  }
}

TEST_CASE("malformed files name the problem") {
  CHECK_THROWS_AS(parse_instance("{ \"name\": "), MalformedFileError);
  CHECK_THROWS_AS(parse_instance("[]"), MalformedFileError);
  try {
    parse_instance(R"({"name": "x", "main": {"origin": [0, 0], "width": 4, "height": 4, "pins": []},
                       "passives": [{"id": "C1", "dims": "big", "net": "A"}], "slots": [[5, 1]]})");
    FAIL("expected an error");
  } catch (const MalformedFileError &e) {
    CHECK(std::string(e.what()).find("dims") != std::string::npos);
  }
}

TEST_CASE("instance files round-trip") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    const std::string text = serialize_instance(inst);
    const PcbInstance back = parse_instance(text);
    CHECK(serialize_instance(back) == text);
    CHECK(back.passive_count() == inst.passive_count());
  }
}

TEST_CASE("placement files round-trip") {
  const PcbInstance inst = testing::tiny_instance();
  const Placement p = Placement::from_slots(std::vector<std::size_t>{0, 1, 2});
  const PlacementRecord rec = make_placement_record(inst, p);
  CHECK(rec.tewl == doctest::Approx(testing::kTinyOptimalTewl));
  CHECK(rec.overlaps == 0);
  const PlacementRecord back = parse_placement(serialize_placement(rec));
  CHECK(back.placement == p);
  CHECK(back.instance == "tiny");
}

TEST_CASE("state encoding") {
  SUBCASE("passive-only one-hot") {
    InstanceData d = testing::tiny_instance().to_data();
    const PcbInstance inst(d);
    CHECK(token_width(inst, EncodingMode::PassiveOnly) == 3);
    CHECK(encode_state(inst, 1, EncodingMode::PassiveOnly).bits == std::vector<std::uint8_t>{0, 1, 0});
  }
  // Two passives, two nets; passive 0 sits on the second-listed net.
  InstanceData d = testing::base_data();
  d.pins = {{"P1", {10, 12}, "A"}, {"P2", {10, 14}, "B"}};
  d.passives = {{"C1", 0, {1, 1}, "B"}, {"C2", 1, {1, 1}, "A"}};
  d.slots = {{5, 5}, {5, 12}};
  SUBCASE("passive plus net") {
    const PcbInstance inst(d);
    CHECK(inst.net_index().at("B") == 1);
    CHECK(token_width(inst, EncodingMode::PassiveNet) == 4);
    CHECK(encode_state(inst, 0, EncodingMode::PassiveNet).bits == std::vector<std::uint8_t>{1, 0, 0, 1});
  }
  SUBCASE("excluded net gives a zero net segment") {
    d.pins.push_back({"G", {20, 20}, "GND"});
    d.passives[1].net = "GND";
    d.excluded_nets = {"GND"};
    const PcbInstance inst(d);
    CHECK(inst.net_count() == 2);
    CHECK(encode_state(inst, 1, EncodingMode::PassiveNet).bits == std::vector<std::uint8_t>{0, 1, 0, 0});
  }
  SUBCASE("out of range") {
    const PcbInstance inst(d);
    CHECK_THROWS_AS(encode_state(inst, 2, EncodingMode::PassiveOnly), IndexError);
  }
}

TEST_CASE("encodings are injective over states") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const PcbInstance inst = testing::random_instance(seed);
    for (const EncodingMode mode : {EncodingMode::PassiveOnly, EncodingMode::PassiveNet}) {
      std::set<std::vector<std::uint8_t>> seen;
      for (std::size_t p = 0; p < inst.passive_count(); ++p) {
        const StateToken t = encode_state(inst, p, mode);
        CHECK(t.bits.size() == token_width(inst, mode));
        seen.insert(t.bits);
      }
      CHECK(seen.size() == inst.passive_count());
    }
  }
}

TEST_CASE("slot anchors and placed geometry") {
  InstanceData d = testing::base_data();
  d.pins = {{"P1", {10, 12}, "A"}};
  d.passives = {{"C1", 0, {2, 2}, "A"}};
  d.slots = {{3.0, 1.0}, {0.0, 0.0}};
  const PcbInstance inst(d);
  CHECK(slot_anchor(inst, 0) == Vec2{3.0, 1.0});
  CHECK(placed_center(inst, 0, 1) == Vec2{1.0, 1.0});
  CHECK_THROWS_AS(slot_anchor(inst, 2), IndexError);
  const Rect r = placed_rect(inst, 0, 0);
  CHECK(r.origin == Vec2{3.0, 1.0});
  CHECK(r.width == 2.0);
  CHECK(r.height == 2.0);
}

TEST_CASE("placement helpers") {
  Placement p(3);
  CHECK_FALSE(p.complete());
  CHECK_THROWS_AS(p.dense(), IncompletePlacementError);
  p.assign(0, 2);
  p.assign(1, 2);
  p.assign(2, 0);
  CHECK(p.complete());
  CHECK_FALSE(p.injective());
  p.assign(1, 4);
  CHECK(p.injective());
  CHECK_NOTHROW(require_complete(testing::tiny_instance(), p));
  p.assign(1, 5);
  CHECK_THROWS_AS(require_complete(testing::tiny_instance(), p), IncompletePlacementError);
  CHECK_THROWS_AS(require_complete(testing::tiny_instance(), Placement::from_slots(std::vector<std::size_t>{0, 1})),
                  IncompletePlacementError);
}

TEST_CASE("generator matches the u4 row shape") {
  GeneratorSpec spec = *preset_spec("u4");
  spec.seed = 1;
  const PcbInstance inst = generate_synthetic(spec);
  CHECK(inst.passive_count() == 10);
  CHECK(inst.net_count() == 7);
  CHECK(inst.action_count() == 36);
  const auto [lo, hi] = dim_range(inst);
  CHECK(lo / hi == doctest::Approx(0.292).epsilon(0.01));
  // Pitch is at least the largest dimension, so no two passives can touch.
  double closest = 1e300;
  for (std::size_t a = 0; a < inst.action_count(); ++a)
    for (std::size_t b = a + 1; b < inst.action_count(); ++b)
      closest = std::min(closest, euclidean_distance(slot_anchor(inst, a), slot_anchor(inst, b)));
  CHECK(closest >= hi);
}

TEST_CASE("generator presets and degenerate specs") {
  for (const std::string &name : preset_names()) {
    CAPTURE(name);
    GeneratorSpec spec = *preset_spec(name);
    const PcbInstance inst = generate_synthetic(spec);
    CHECK(inst.passive_count() == spec.passives);
    CHECK(inst.net_count() == spec.nets);
    CHECK(inst.action_count() == spec.actions);
  }
  CHECK_FALSE(preset_spec("nope").has_value());

  GeneratorSpec one;
  one.passives = one.nets = one.actions = 1;
  const PcbInstance inst = generate_synthetic(one);
  CHECK(inst.passive_count() == 1);
  CHECK(inst.action_count() == 1);

  GeneratorSpec cramped;
  cramped.board_size = 5.0;
  CHECK_THROWS_AS(generate_synthetic(cramped), GenerationInfeasible);
  GeneratorSpec inconsistent;
  inconsistent.nets = inconsistent.passives + 1;
  CHECK_THROWS_AS(generate_synthetic(inconsistent), GenerationInfeasible);
}

TEST_CASE("generator is deterministic per seed") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratorSpec spec = *preset_spec(seed % 2 ? "u3" : "u24");
    spec.seed = seed;
    CHECK(serialize_instance(generate_synthetic(spec)) == serialize_instance(generate_synthetic(spec)));
  }
  GeneratorSpec a = *preset_spec("u4"), b = a;
  b.seed = a.seed + 1;
  CHECK(serialize_instance(generate_synthetic(a)) != serialize_instance(generate_synthetic(b)));
}

TEST_CASE("generated disparity stays within five percent of the spec") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    for (const double disparity : {0.292, 0.5, 0.833}) {
      GeneratorSpec spec;
      spec.seed = seed;
      spec.disparity = disparity;
      const auto [lo, hi] = dim_range(generate_synthetic(spec));
      CHECK(lo / hi == doctest::Approx(disparity).epsilon(0.05));
    }
  }
}
