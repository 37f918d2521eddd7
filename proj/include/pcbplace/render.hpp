// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcbplace/metrics.hpp"
#include "pcbplace/model.hpp"

namespace pcbplace {

struct RenderStyle {
  double scale = 10.0;  ///< pixels per millimeter
  std::string footprint_color = "#3a3a3a";
  std::string slot_color = "#9aa5b1";
  std::string passive_color = "#d98b2b";
  std::string pin_color = "#c0392b";
  std::string wire_color = "#2471a3";
  bool labels = true;
};

/// SVG 1.1 drawing of the board: footprint, slot outlines, pins and, when a
/// placement is given, passive rectangles and the center-to-nearest-pin
/// wires. Output is byte-stable for fixed inputs. Throws
/// IncompletePlacementError for incomplete placements.
std::string render_svg(const PcbInstance &instance, const Placement *placement, const RenderStyle &style = {});

struct ReportEntry {
  std::string instance;
  std::string method;
  /// Empty when the run failed; `error` then says why.
  std::optional<MetricsReport> metrics;
  std::optional<double> gt_tewl;
  double seconds = 0.0;
  std::string error;
};

struct Report {
  std::string csv;
  std::string table;
  /// Parallel to the input entries.
  std::vector<bool> best;
};

/// CSV columns: instance,method,tewl,overlap_pairs,crossing_count,seconds,
/// gt_tewl,tewl_vs_gt_ratio,best,error. The text table puts instances on
/// rows and methods on columns, marking the lowest TEWL per instance with
/// '*' (first listed wins ties), followed by per-method overlap and
/// crossing totals. Crossings are straight-line proxies for routing
/// conflicts.
Report emit_report(const std::vector<ReportEntry> &entries);

} // namespace pcbplace
