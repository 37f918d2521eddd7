// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcbplace/error.hpp"

namespace pcbplace {

namespace {

constexpr double kContainTolerance = 1e-9;

[[noreturn]] void violation(const std::string &what) { throw ConstraintViolation("constraint violation: " + what); }

std::string fmt_vec(Vec2 v) { return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")"; }

} // namespace

PcbInstance::PcbInstance(InstanceData data)
    : name_(std::move(data.name)), footprint_(data.main_footprint), pins_(std::move(data.pins)),
      excluded_(std::move(data.excluded_nets)), gt_tewl_(data.gt_tewl) {
  if (!(footprint_.width > 0.0) || !(footprint_.height > 0.0))
    violation("main footprint must have positive width and height");
  if (data.passives.empty())
    violation("instance needs at least one passive (M >= 1)");
  if (data.slots.size() < data.passives.size())
    violation("need at least as many slots as passives (N_actions >= M), got " + std::to_string(data.slots.size()) +
              " slots for " + std::to_string(data.passives.size()) + " passives");

  Rect grown = footprint_;
  grown.origin = grown.origin - Vec2{kContainTolerance, kContainTolerance};
  grown.width += 2 * kContainTolerance;
  grown.height += 2 * kContainTolerance;

  std::set<std::string> pin_ids;
  for (const Pin &pin : pins_) {
    if (pin.net.empty())
      violation("pin '" + pin.id + "' has an empty net");
    if (!grown.contains(pin.pos))
      violation("pin '" + pin.id + "' at " + fmt_vec(pin.pos) + " lies outside the main footprint");
    if (!pin_ids.insert(pin.id).second)
      violation("duplicate pin id '" + pin.id + "'");
    if (!excluded_.count(pin.net) && !net_index_.count(pin.net)) {
      const std::size_t next = net_index_.size();
      net_index_.emplace(pin.net, next);
    }
  }

  std::set<std::string> passive_ids;
  passives_.reserve(data.passives.size());
  passive_pins_.resize(data.passives.size());
  for (std::size_t i = 0; i < data.passives.size(); ++i) {
    Passive p = std::move(data.passives[i]);
    p.index = i;
    if (!(p.dims.x > 0.0) || !(p.dims.y > 0.0) || !std::isfinite(p.dims.x) || !std::isfinite(p.dims.y))
      violation("passive '" + p.id + "' must have strictly positive dims");
    if (p.net.empty())
      violation("passive '" + p.id + "' has an empty net");
    if (!passive_ids.insert(p.id).second)
      violation("duplicate passive id '" + p.id + "'");
    if (!excluded_.count(p.net)) {
      for (std::size_t t = 0; t < pins_.size(); ++t)
        if (pins_[t].net == p.net)
          passive_pins_[i].push_back(t);
      if (passive_pins_[i].empty())
        violation("net '" + p.net + "' of passive '" + p.id + "' has no pin and is not excluded");
    }
    passives_.push_back(std::move(p));
  }

  slots_.reserve(data.slots.size());
  for (std::size_t i = 0; i < data.slots.size(); ++i) {
    const Vec2 a = data.slots[i];
    if (!std::isfinite(a.x) || !std::isfinite(a.y))
      violation("slot " + std::to_string(i) + " has a non-finite anchor");
    if (footprint_.contains_strictly(a))
      violation("slot " + std::to_string(i) + " anchor " + fmt_vec(a) + " lies inside the main footprint");
    for (std::size_t j = 0; j < i; ++j)
      if (data.slots[j] == a)
        violation("duplicate slot anchor " + fmt_vec(a) + " at slots " + std::to_string(j) + " and " +
                  std::to_string(i));
    slots_.push_back({i, a});
  }
}

std::optional<std::size_t> PcbInstance::passive_net_index(std::size_t p) const {
  const auto it = net_index_.find(passives_.at(p).net);
  if (it == net_index_.end())
    return std::nullopt;
  return it->second;
}

std::span<const std::size_t> PcbInstance::pins_for_passive(std::size_t p) const { return passive_pins_.at(p); }

InstanceData PcbInstance::to_data() const {
  InstanceData d;
  d.name = name_;
  d.main_footprint = footprint_;
  d.pins = pins_;
  d.passives = passives_;
  for (const auto &s : slots_)
    d.slots.push_back(s.anchor);
  d.excluded_nets = excluded_;
  d.gt_tewl = gt_tewl_;
  return d;
}

std::size_t token_width(const PcbInstance &instance, EncodingMode mode) {
  return mode == EncodingMode::PassiveOnly ? instance.passive_count()
                                           : instance.passive_count() + instance.net_count();
}

StateToken encode_state(const PcbInstance &instance, std::size_t passive_index, EncodingMode mode) {
  if (passive_index >= instance.passive_count())
    throw IndexError("passive index " + std::to_string(passive_index) + " out of range [0, " +
                     std::to_string(instance.passive_count()) + ")");
  StateToken token;
  token.mode = mode;
  token.bits.assign(token_width(instance, mode), 0);
  token.bits[passive_index] = 1;
  if (mode == EncodingMode::PassiveNet) {
    if (const auto net = instance.passive_net_index(passive_index))
      token.bits[instance.passive_count() + *net] = 1;
  }
  return token;
}

Vec2 slot_anchor(const PcbInstance &instance, std::size_t action) {
  if (action >= instance.action_count())
    throw IndexError("slot index " + std::to_string(action) + " out of range [0, " +
                     std::to_string(instance.action_count()) + ")");
  return instance.slots()[action].anchor;
}

Vec2 placed_center(const PcbInstance &instance, std::size_t p, std::size_t action) {
  return 0.5 * instance.passives()[p].dims + slot_anchor(instance, action);
}

Rect placed_rect(const PcbInstance &instance, std::size_t p, std::size_t action) {
  const Vec2 dims = instance.passives()[p].dims;
  return {slot_anchor(instance, action), dims.x, dims.y};
}

Placement Placement::from_slots(std::span<const std::size_t> slots) {
  Placement placement(slots.size());
  for (std::size_t i = 0; i < slots.size(); ++i)
    placement.assign(i, slots[i]);
  return placement;
}

bool Placement::complete() const {
  return std::all_of(slots_.begin(), slots_.end(), [](const auto &s) { return s.has_value(); });
}

bool Placement::injective() const {
  std::set<std::size_t> seen;
  for (const auto &s : slots_)
    if (s && !seen.insert(*s).second)
      return false;
  return true;
}

std::vector<std::size_t> Placement::dense() const {
  std::vector<std::size_t> out;
  out.reserve(slots_.size());
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (!slots_[i])
      throw IncompletePlacementError("incomplete placement: passive " + std::to_string(i) + " is unassigned");
    out.push_back(*slots_[i]);
  }
  return out;
}

void require_complete(const PcbInstance &instance, const Placement &placement) {
  if (placement.size() != instance.passive_count())
    throw IncompletePlacementError("incomplete placement: expected " + std::to_string(instance.passive_count()) +
                                   " assignments, got " + std::to_string(placement.size()));
  for (std::size_t i = 0; i < placement.size(); ++i) {
    const auto &slot = placement.slot_of(i);
    if (!slot)
      throw IncompletePlacementError("incomplete placement: passive " + std::to_string(i) + " is unassigned");
    if (*slot >= instance.action_count())
      throw IncompletePlacementError("placement assigns passive " + std::to_string(i) + " to nonexistent slot " +
                                     std::to_string(*slot));
  }
}

} // namespace pcbplace
