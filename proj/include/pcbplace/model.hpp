// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "pcbplace/geometry.hpp"

namespace pcbplace {

/// A pin of the main component.
struct Pin {
  std::string id;
  Vec2 pos;
  std::string net;

  friend bool operator==(const Pin &, const Pin &) = default;
};

/// A passive to be placed. `dims` is (length, breadth).
struct Passive {
  std::string id;
  std::size_t index = 0;
  Vec2 dims;
  std::string net;

  friend bool operator==(const Passive &, const Passive &) = default;
};

/// A discrete placement location; `anchor` is the lower-left corner a
/// passive's rectangle is drawn from.
struct CandidateSlot {
  std::size_t index = 0;
  Vec2 anchor;

  friend bool operator==(const CandidateSlot &, const CandidateSlot &) = default;
};

/// Unvalidated instance contents, as read from a file or produced by the
/// generator. Passive and slot indices are implied by position.
struct InstanceData {
  std::string name;
  Rect main_footprint;
  std::vector<Pin> pins;
  std::vector<Passive> passives;
  std::vector<Vec2> slots;
  std::set<std::string> excluded_nets;
  std::optional<double> gt_tewl;
};

/// A validated placement problem. Immutable after construction.
class PcbInstance {
public:
  /// Validates `data` and throws ConstraintViolation naming the broken
  /// invariant.
  explicit PcbInstance(InstanceData data);

  const std::string &name() const { return name_; }
  const Rect &main_footprint() const { return footprint_; }
  std::span<const Pin> pins() const { return pins_; }
  std::span<const Passive> passives() const { return passives_; }
  std::span<const CandidateSlot> slots() const { return slots_; }
  const std::set<std::string> &excluded_nets() const { return excluded_; }
  const std::map<std::string, std::size_t> &net_index() const { return net_index_; }
  const std::optional<double> &gt_tewl() const { return gt_tewl_; }

  std::size_t passive_count() const { return passives_.size(); }
  std::size_t action_count() const { return slots_.size(); }
  std::size_t net_count() const { return net_index_.size(); }

  bool is_excluded(const std::string &net) const { return excluded_.count(net) != 0; }

  /// Net index of passive `p`, or nullopt for excluded nets.
  std::optional<std::size_t> passive_net_index(std::size_t p) const;

  /// Indices into pins() whose net equals passive `p`'s net, in listing
  /// order. Empty for excluded nets.
  std::span<const std::size_t> pins_for_passive(std::size_t p) const;

  InstanceData to_data() const;

private:
  std::string name_;
  Rect footprint_;
  std::vector<Pin> pins_;
  std::vector<Passive> passives_;
  std::vector<CandidateSlot> slots_;
  std::set<std::string> excluded_;
  std::map<std::string, std::size_t> net_index_;
  std::optional<double> gt_tewl_;
  std::vector<std::vector<std::size_t>> passive_pins_;
};

enum class EncodingMode { PassiveOnly, PassiveNet };

/// One-hot state token fed to the networks.
struct StateToken {
  std::vector<std::uint8_t> bits;
  EncodingMode mode = EncodingMode::PassiveOnly;

  std::vector<double> as_input() const { return {bits.begin(), bits.end()}; }
  friend bool operator==(const StateToken &, const StateToken &) = default;
};

/// Input width of the networks for `mode`.
std::size_t token_width(const PcbInstance &instance, EncodingMode mode);

/// Passive-only mode: one-hot of length M. Passive+net mode: concatenation
/// of the passive one-hot and the net one-hot; the net segment is all zero
/// for passives on excluded nets.
StateToken encode_state(const PcbInstance &instance, std::size_t passive_index, EncodingMode mode);

/// Lower-left corner of slot `action`. Throws IndexError when out of range.
Vec2 slot_anchor(const PcbInstance &instance, std::size_t action);

/// Center of passive `p` when placed at slot `action`.
Vec2 placed_center(const PcbInstance &instance, std::size_t p, std::size_t action);

/// Placed rectangle of passive `p` at slot `action`.
Rect placed_rect(const PcbInstance &instance, std::size_t p, std::size_t action);

/// Assignment of passives to slots. Entries may collide during training.
class Placement {
public:
  Placement() = default;
  explicit Placement(std::size_t passive_count) : slots_(passive_count) {}
  explicit Placement(std::vector<std::optional<std::size_t>> slots) : slots_(std::move(slots)) {}

  static Placement from_slots(std::span<const std::size_t> slots);

  std::size_t size() const { return slots_.size(); }
  void assign(std::size_t passive, std::size_t slot) { slots_.at(passive) = slot; }
  const std::optional<std::size_t> &slot_of(std::size_t passive) const { return slots_.at(passive); }

  bool complete() const;
  bool injective() const;

  /// Slot per passive; throws IncompletePlacementError if any is missing.
  std::vector<std::size_t> dense() const;

  friend bool operator==(const Placement &, const Placement &) = default;

private:
  std::vector<std::optional<std::size_t>> slots_;
};

/// Throws IncompletePlacementError unless `placement` covers every passive
/// of `instance` with in-range slots.
void require_complete(const PcbInstance &instance, const Placement &placement);

} // namespace pcbplace
