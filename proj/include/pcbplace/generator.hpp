// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcbplace/model.hpp"

namespace pcbplace {

/// Parameters of a synthetic board. Passive dims are drawn from
/// [disparity * max_dim, max_dim] with both extremes always present, so the
/// smallest-to-largest dimension ratio equals `disparity`.
struct GeneratorSpec {
  std::string name = "synthetic";
  std::size_t passives = 10;
  std::size_t nets = 7;
  std::size_t actions = 36;
  double board_size = 100.0;
  double disparity = 0.5;
  double max_dim = 3.0;
  std::uint64_t seed = 1;
  /// Adds an excluded ground net with one pin and no passives.
  bool with_ground = true;
};

/// Slot pitch as a multiple of the largest passive dimension.
inline constexpr double kSlotPitchFactor = 1.25;

/// Deterministic for a fixed spec. Slots form a rectangular ring of square
/// cells around the main footprint; pins sit on the footprint border.
/// Throws GenerationInfeasible when the ring does not fit on the board or
/// the counts are inconsistent.
PcbInstance generate_synthetic(const GeneratorSpec &spec);

/// Board-shape presets (passives, nets, actions, size disparity) for the
/// reference boards u4, u3, u25, u47, u24, u115, vr3, u20, u26.
std::optional<GeneratorSpec> preset_spec(std::string_view name);
std::vector<std::string> preset_names();

} // namespace pcbplace
