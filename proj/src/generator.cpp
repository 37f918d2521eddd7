// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/generator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pcbplace/error.hpp"
#include "pcbplace/rng.hpp"

namespace pcbplace {

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

// Presets with the same shape (u4 and u3) must not yield the same board for a given seed.
std::uint64_t name_salted_seed(const GeneratorSpec &spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : spec.name)
    h = (h ^ c) * 0x100000001b3ULL;
  return spec.seed ^ h;
}

struct PresetRow {
  const char *name;
  std::size_t passives;
  std::size_t nets;
  std::size_t actions;
  double disparity;
};

constexpr std::array<PresetRow, 9> kPresets{{
    {"u4", 10, 7, 36, 0.292},
    {"u3", 10, 7, 36, 0.292},
    {"u25", 10, 7, 20, 0.292},
    {"u47", 9, 7, 24, 0.769},
    {"u24", 8, 4, 20, 0.033},
    {"u115", 11, 5, 42, 0.044},
    {"vr3", 13, 8, 24, 0.085},
    {"u20", 23, 14, 36, 0.085},
    {"u26", 24, 13, 48, 0.237},
}};

// Cells of a c-by-c ring, counter-clockwise from the lower-left corner.
std::vector<std::pair<std::size_t, std::size_t>> ring_cells(std::size_t c) {
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < c; ++i)
    cells.emplace_back(i, 0);
  for (std::size_t j = 1; j < c; ++j)
    cells.emplace_back(c - 1, j);
  for (std::size_t i = c - 1; i-- > 0;)
    cells.emplace_back(i, c - 1);
  for (std::size_t j = c - 1; j-- > 1;)
    cells.emplace_back(0, j);
  return cells;
}

Vec2 point_on_border(const Rect &r, double t) {
  const double w = r.width, h = r.height;
  if (t < w)
    return {r.origin.x + t, r.origin.y};
  t -= w;
  if (t < h)
    return {r.origin.x + w, r.origin.y + t};
  t -= h;
  if (t < w)
    return {r.origin.x + w - t, r.origin.y + h};
  t -= w;
  return {r.origin.x, r.origin.y + h - std::min(t, h)};
}

} // namespace

PcbInstance generate_synthetic(const GeneratorSpec &spec) {
  if (spec.passives == 0)
    throw GenerationInfeasible("generation infeasible: need at least one passive");
  if (spec.actions < spec.passives)
    throw GenerationInfeasible("generation infeasible: actions (" + std::to_string(spec.actions) +
                               ") must be >= passives (" + std::to_string(spec.passives) + ")");
  if (spec.nets == 0 || spec.nets > spec.passives)
    throw GenerationInfeasible("generation infeasible: nets must be in [1, passives]");
  if (!(spec.disparity > 0.0) || spec.disparity > 1.0)
    throw GenerationInfeasible("generation infeasible: size-disparity ratio must lie in (0, 1]");
  if (!(spec.max_dim > 0.0))
    throw GenerationInfeasible("generation infeasible: max_dim must be positive");

  const std::size_t side = std::max<std::size_t>(3, (spec.actions + 4 + 3) / 4);
  const double pitch = round3(kSlotPitchFactor * spec.max_dim);
  const double extent = static_cast<double>(side) * pitch;
  if (extent > spec.board_size)
    throw GenerationInfeasible("generation infeasible: slot ring needs " + std::to_string(extent) +
                               " mm but the board is " + std::to_string(spec.board_size) + " mm");

  Rng rng(name_salted_seed(spec));
  InstanceData data;
  data.name = spec.name;

  const double offset = round3(0.5 * (spec.board_size - extent));
  const double margin = round3(0.1 * pitch);
  const double lo = round3(offset + pitch + margin);
  const double hi = round3(offset + static_cast<double>(side - 1) * pitch - margin);
  data.main_footprint = {{lo, lo}, round3(hi - lo), round3(hi - lo)};
  const Rect &fp = data.main_footprint;

  const auto cells = ring_cells(side);
  for (std::size_t k = 0; k < spec.actions; ++k) {
    const auto [i, j] = cells[k * cells.size() / spec.actions];
    data.slots.push_back({round3(offset + static_cast<double>(i) * pitch), round3(offset + static_cast<double>(j) * pitch)});
  }

  const double perimeter = 2.0 * (fp.width + fp.height);
  auto border_pin = [&](double t) {
    const Vec2 p = point_on_border(fp, t);
    return Vec2{std::clamp(round3(p.x), fp.origin.x, fp.origin.x + fp.width),
                std::clamp(round3(p.y), fp.origin.y, fp.origin.y + fp.height)};
  };

  std::size_t pin_no = 1;
  std::vector<std::string> net_names;
  for (std::size_t n = 0; n < spec.nets; ++n) {
    net_names.push_back("NET" + std::to_string(n + 1));
    const std::size_t count = 1 + rng.below(2);
    for (std::size_t c = 0; c < count; ++c)
      data.pins.push_back({"P" + std::to_string(pin_no++), border_pin(rng.uniform(0.0, perimeter)), net_names.back()});
  }
  if (spec.with_ground) {
    data.pins.push_back({"P" + std::to_string(pin_no++), border_pin(rng.uniform(0.0, perimeter)), "GND"});
    data.excluded_nets.insert("GND");
  }

  // Every net drives at least one passive.
  std::vector<std::size_t> passive_net(spec.passives);
  for (std::size_t i = 0; i < spec.passives; ++i)
    passive_net[i] = i < spec.nets ? i : rng.below(spec.nets);
  for (std::size_t i = spec.passives; i-- > 1;)
    std::swap(passive_net[i], passive_net[rng.below(i + 1)]);

  const double dmax = round3(spec.max_dim);
  const double dmin = round3(spec.disparity * spec.max_dim);
  if (!(dmin > 0.0) || std::abs(dmin / dmax - spec.disparity) > 0.05 * spec.disparity)
    throw GenerationInfeasible("generation infeasible: disparity not representable at 0.001 mm resolution");
  auto draw = [&] { return std::clamp(round3(rng.uniform(dmin, dmax)), dmin, dmax); };

  for (std::size_t i = 0; i < spec.passives; ++i) {
    Vec2 dims{draw(), draw()};
    if (i == 0)
      dims.x = dmax;
    if (i == 1 || spec.passives == 1)
      dims.y = dmin;
    data.passives.push_back({"C" + std::to_string(i + 1), i, dims, net_names[passive_net[i]]});
  }

  return PcbInstance(std::move(data));
}

std::optional<GeneratorSpec> preset_spec(std::string_view name) {
  for (const PresetRow &row : kPresets) {
    if (name == row.name) {
      GeneratorSpec spec;
      spec.name = row.name;
      spec.passives = row.passives;
      spec.nets = row.nets;
      spec.actions = row.actions;
      spec.disparity = row.disparity;
      return spec;
    }
  }
  return std::nullopt;
}

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const PresetRow &row : kPresets)
    names.emplace_back(row.name);
  return names;
}

} // namespace pcbplace
