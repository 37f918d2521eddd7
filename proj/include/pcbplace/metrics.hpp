// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcbplace/model.hpp"

namespace pcbplace {

/// Wire contribution of passive `p` at slot `action`: the smallest L1
/// distance from the placed center to a pin sharing its net (pins scanned in
/// listing order). Zero for excluded-net passives.
double wire_contribution(const PcbInstance &instance, std::size_t p, std::size_t action);

/// Index into pins() of the pin realizing wire_contribution (lowest index on
/// ties), or nullopt for excluded nets.
std::optional<std::size_t> nearest_pin(const PcbInstance &instance, std::size_t p, std::size_t action);

/// Total wirelength: sum of wire_contribution over passives in index order.
/// Throws IncompletePlacementError for incomplete placements.
double tewl(const PcbInstance &instance, const Placement &placement);

/// Unordered passive pairs whose placed rectangles share positive area.
std::size_t count_overlaps(const PcbInstance &instance, const Placement &placement);

/// Unordered pairs of center-to-nearest-pin segments that cross properly.
/// Segments sharing an endpoint or only touching do not count.
std::size_t count_crossings(const PcbInstance &instance, const Placement &placement);

struct Segment {
  Vec2 a;
  Vec2 b;
};

/// Proper crossing test: the two segments' interiors intersect in a single
/// point that is not an endpoint of either.
bool segments_cross(const Segment &s, const Segment &t);

struct PassiveWire {
  std::size_t passive = 0;
  std::size_t slot = 0;
  double wire = 0.0;
};

struct MetricsReport {
  double tewl = 0.0;
  std::size_t overlap_pairs = 0;
  std::size_t crossing_count = 0;
  std::vector<PassiveWire> per_passive;
};

MetricsReport evaluate_metrics(const PcbInstance &instance, const Placement &placement);

/// Header and row of the per-run metrics CSV:
/// name,method,tewl,overlap_pairs,crossing_count,seconds
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string &name, const std::string &method, const MetricsReport &report,
                            double seconds);

} // namespace pcbplace
