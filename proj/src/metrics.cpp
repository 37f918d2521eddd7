// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/metrics.hpp"

#include <cstdio>

#include "pcbplace/error.hpp"

namespace pcbplace {

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

int sign(double v) { return (v > 0.0) - (v < 0.0); }

std::vector<Segment> wire_segments(const PcbInstance &instance, const std::vector<std::size_t> &slots) {
  std::vector<Segment> segments;
  for (std::size_t p = 0; p < slots.size(); ++p)
    if (const auto pin = nearest_pin(instance, p, slots[p]))
      segments.push_back({placed_center(instance, p, slots[p]), instance.pins()[*pin].pos});
  return segments;
}

} // namespace

std::optional<std::size_t> nearest_pin(const PcbInstance &instance, std::size_t p, std::size_t action) {
  const auto pins = instance.pins_for_passive(p);
  if (pins.empty())
    return std::nullopt;
  const Vec2 center = placed_center(instance, p, action);
  std::size_t best = pins[0];
  double best_d = l1_distance(center, instance.pins()[best].pos);
  for (std::size_t i = 1; i < pins.size(); ++i) {
    const double d = l1_distance(center, instance.pins()[pins[i]].pos);
    if (d < best_d) {
      best_d = d;
      best = pins[i];
    }
  }
  return best;
}

double wire_contribution(const PcbInstance &instance, std::size_t p, std::size_t action) {
  const auto pin = nearest_pin(instance, p, action);
  if (!pin)
    return 0.0;
  return l1_distance(placed_center(instance, p, action), instance.pins()[*pin].pos);
}

double tewl(const PcbInstance &instance, const Placement &placement) {
  require_complete(instance, placement);
  double total = 0.0;
  for (std::size_t p = 0; p < placement.size(); ++p)
    total += wire_contribution(instance, p, *placement.slot_of(p));
  return total;
}

std::size_t count_overlaps(const PcbInstance &instance, const Placement &placement) {
  require_complete(instance, placement);
  const auto slots = placement.dense();
  std::size_t count = 0;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const Rect ri = placed_rect(instance, i, slots[i]);
    for (std::size_t j = i + 1; j < slots.size(); ++j)
      if (intersection_area(ri, placed_rect(instance, j, slots[j])) > 0.0)
        ++count;
  }
  return count;
}

bool segments_cross(const Segment &s, const Segment &t) {
  const int d1 = sign(cross(s.a, s.b, t.a));
  const int d2 = sign(cross(s.a, s.b, t.b));
  const int d3 = sign(cross(t.a, t.b, s.a));
  const int d4 = sign(cross(t.a, t.b, s.b));
  return d1 * d2 < 0 && d3 * d4 < 0;
}

std::size_t count_crossings(const PcbInstance &instance, const Placement &placement) {
  require_complete(instance, placement);
  const auto segments = wire_segments(instance, placement.dense());
  std::size_t count = 0;
  for (std::size_t i = 0; i < segments.size(); ++i)
    for (std::size_t j = i + 1; j < segments.size(); ++j)
      if (segments_cross(segments[i], segments[j]))
        ++count;
  return count;
}

MetricsReport evaluate_metrics(const PcbInstance &instance, const Placement &placement) {
  MetricsReport report;
  report.tewl = tewl(instance, placement);
  report.overlap_pairs = count_overlaps(instance, placement);
  report.crossing_count = count_crossings(instance, placement);
  for (std::size_t p = 0; p < placement.size(); ++p) {
    const std::size_t slot = *placement.slot_of(p);
    report.per_passive.push_back({p, slot, wire_contribution(instance, p, slot)});
  }
  return report;
}

std::string metrics_csv_header() { return "name,method,tewl,overlap_pairs,crossing_count,seconds"; }

std::string metrics_csv_row(const std::string &name, const std::string &method, const MetricsReport &report,
                            double seconds) {
  char buf[128];
  std::snprintf(buf, sizeof buf, ",%.6f,%zu,%zu,%.3f", report.tewl, report.overlap_pairs, report.crossing_count,
                seconds);
  return name + "," + method + buf;
}

} // namespace pcbplace
