// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pcbplace/model.hpp"

namespace pcbplace {

// Instance files (*.pcb) are JSON documents:
//
//   {
//     "name": "u4",
//     "main": {"origin": [x, y], "width": w, "height": h,
//              "pins": [{"id": "P1", "pos": [x, y], "net": "VCC"}, ...]},
//     "passives": [{"id": "C1", "dims": [l, b], "net": "VCC"}, ...],
//     "slots": [[x, y], ...],
//     "excluded_nets": ["GND"],
//     "gt_tewl": 2219            // optional
//   }
//
// All coordinates are millimeters.

/// Parses instance text. Throws MalformedFileError (naming the line or the
/// offending field) or ConstraintViolation.
PcbInstance parse_instance(std::string_view text);
PcbInstance load_instance(const std::filesystem::path &path);

std::string serialize_instance(const PcbInstance &instance);
void save_instance(const PcbInstance &instance, const std::filesystem::path &path);

/// Contents of a placement file (*.place).
struct PlacementRecord {
  std::string instance;
  Placement placement;
  double tewl = 0.0;
  std::size_t overlaps = 0;
};

PlacementRecord parse_placement(std::string_view text);
PlacementRecord load_placement(const std::filesystem::path &path);

/// Builds a record with freshly computed metrics; `placement` must be
/// complete.
PlacementRecord make_placement_record(const PcbInstance &instance, const Placement &placement);
std::string serialize_placement(const PlacementRecord &record);
void save_placement(const PlacementRecord &record, const std::filesystem::path &path);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace pcbplace
