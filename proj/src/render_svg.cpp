// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdio>
#include <limits>
#include <sstream>

#include "pcbplace/error.hpp"
#include "pcbplace/render.hpp"

namespace pcbplace {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string &s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
    case '&': out += "&amp;"; break;
    case '<': out += "&lt;"; break;
    case '>': out += "&gt;"; break;
    case '"': out += "&quot;"; break;
    case '\'': out += "&apos;"; break;
    default: out += c;
    }
  }
  return out;
}

struct Frame {
  double min_x, min_y, max_x, max_y;
  double scale;
  double margin;

  double x(double bx) const { return margin + (bx - min_x) * scale; }
  double y(double by) const { return margin + (max_y - by) * scale; }
  double width() const { return 2 * margin + (max_x - min_x) * scale; }
  double height() const { return 2 * margin + (max_y - min_y) * scale; }
};

} // namespace

std::string render_svg(const PcbInstance &instance, const Placement *placement, const RenderStyle &style) {
  if (!(style.scale > 0.0))
    throw ValidationError("render scale must be positive");
  if (placement)
    require_complete(instance, *placement);

  double cell = 0.0;
  for (const Passive &p : instance.passives())
    cell = std::max({cell, p.dims.x, p.dims.y});

  const Rect &fp = instance.main_footprint();
  Frame f{fp.origin.x, fp.origin.y, fp.origin.x + fp.width, fp.origin.y + fp.height, style.scale, 20.0};
  auto grow = [&](Vec2 p) {
    f.min_x = std::min(f.min_x, p.x);
    f.min_y = std::min(f.min_y, p.y);
    f.max_x = std::max(f.max_x, p.x);
    f.max_y = std::max(f.max_y, p.y);
  };
  for (const CandidateSlot &s : instance.slots()) {
    grow(s.anchor);
    grow(s.anchor + Vec2{cell, cell});
  }
  for (const Pin &pin : instance.pins())
    grow(pin.pos);

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(f.width()) << "\" height=\""
      << num(f.height()) << "\" viewBox=\"0 0 " << num(f.width()) << " " << num(f.height()) << "\">\n";
  svg << "<title>" << escape(instance.name()) << "</title>\n";
  svg << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << num(f.width()) << "\" height=\"" << num(f.height())
      << "\" fill=\"#ffffff\"/>\n";

  svg << "<rect class=\"main\" x=\"" << num(f.x(fp.origin.x)) << "\" y=\"" << num(f.y(fp.origin.y + fp.height))
      << "\" width=\"" << num(fp.width * f.scale) << "\" height=\"" << num(fp.height * f.scale) << "\" fill=\""
      << style.footprint_color << "\" fill-opacity=\"0.15\" stroke=\"" << style.footprint_color << "\"/>\n";

  for (const CandidateSlot &s : instance.slots())
    svg << "<rect class=\"slot\" id=\"slot-" << s.index << "\" x=\"" << num(f.x(s.anchor.x)) << "\" y=\""
        << num(f.y(s.anchor.y + cell)) << "\" width=\"" << num(cell * f.scale) << "\" height=\""
        << num(cell * f.scale) << "\" fill=\"none\" stroke=\"" << style.slot_color
        << "\" stroke-dasharray=\"2,2\"/>\n";

  for (const Pin &pin : instance.pins()) {
    svg << "<circle class=\"pin\" cx=\"" << num(f.x(pin.pos.x)) << "\" cy=\"" << num(f.y(pin.pos.y))
        << "\" r=\"2.5\" fill=\"" << style.pin_color << "\"/>\n";
    if (style.labels)
      svg << "<text class=\"pin-label\" x=\"" << num(f.x(pin.pos.x) + 3.0) << "\" y=\"" << num(f.y(pin.pos.y) - 3.0)
          << "\" font-size=\"8\" font-family=\"monospace\">" << escape(pin.net) << "</text>\n";
  }

  if (placement) {
    for (std::size_t p = 0; p < instance.passive_count(); ++p) {
      const std::size_t slot = *placement->slot_of(p);
      if (const auto pin = nearest_pin(instance, p, slot)) {
        const Vec2 c = placed_center(instance, p, slot);
        const Vec2 t = instance.pins()[*pin].pos;
        svg << "<line class=\"wire\" x1=\"" << num(f.x(c.x)) << "\" y1=\"" << num(f.y(c.y)) << "\" x2=\""
            << num(f.x(t.x)) << "\" y2=\"" << num(f.y(t.y)) << "\" stroke=\"" << style.wire_color
            << "\" stroke-width=\"1\"/>\n";
      }
    }
    for (std::size_t p = 0; p < instance.passive_count(); ++p) {
      const Rect r = placed_rect(instance, p, *placement->slot_of(p));
      svg << "<rect class=\"passive\" x=\"" << num(f.x(r.origin.x)) << "\" y=\"" << num(f.y(r.origin.y + r.height))
          << "\" width=\"" << num(r.width * f.scale) << "\" height=\"" << num(r.height * f.scale) << "\" fill=\""
          << style.passive_color << "\" fill-opacity=\"0.8\" stroke=\"#000000\" stroke-width=\"0.5\"/>\n";
      if (style.labels)
        svg << "<text class=\"passive-label\" x=\"" << num(f.x(r.origin.x)) << "\" y=\""
            << num(f.y(r.origin.y + r.height) - 2.0) << "\" font-size=\"7\" font-family=\"monospace\">"
            << escape(instance.passives()[p].id) << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

} // namespace pcbplace
