// SPDX-License-Identifier: Apache-2.0
#include "pcbplace/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pcbplace/error.hpp"
#include "pcbplace/metrics.hpp"

namespace pcbplace {

using nlohmann::json;

namespace {

[[noreturn]] void bad_field(const std::string &field, const std::string &what) {
  throw MalformedFileError("malformed file: field '" + field + "' " + what);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error &e) {
    const std::size_t limit = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < limit; ++i)
      if (text[i] == '\n')
        ++line;
    throw MalformedFileError("malformed file: line " + std::to_string(line) + ": " + e.what());
  }
}

const json &member(const json &obj, const std::string &key, const std::string &path) {
  if (!obj.is_object())
    bad_field(path, "must be an object");
  const auto it = obj.find(key);
  if (it == obj.end())
    bad_field(path.empty() ? key : path + "." + key, "is missing");
  return *it;
}

double number(const json &j, const std::string &path) {
  if (!j.is_number())
    bad_field(path, "must be a number");
  return j.get<double>();
}

std::string string_of(const json &j, const std::string &path) {
  if (!j.is_string())
    bad_field(path, "must be a string");
  return j.get<std::string>();
}

Vec2 vec2(const json &j, const std::string &path) {
  if (!j.is_array() || j.size() != 2)
    bad_field(path, "must be a two-element array [x, y]");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

const json &array(const json &j, const std::string &path) {
  if (!j.is_array())
    bad_field(path, "must be an array");
  return j;
}

std::size_t index_of(const json &j, const std::string &path) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    bad_field(path, "must be a non-negative integer");
  return j.get<std::size_t>();
}

json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

} // namespace

PcbInstance parse_instance(std::string_view text) {
  const json root = parse_json(text);
  InstanceData data;
  data.name = string_of(member(root, "name", ""), "name");

  const json &main = member(root, "main", "");
  data.main_footprint.origin = vec2(member(main, "origin", "main"), "main.origin");
  data.main_footprint.width = number(member(main, "width", "main"), "main.width");
  data.main_footprint.height = number(member(main, "height", "main"), "main.height");

  const json &pins = array(member(main, "pins", "main"), "main.pins");
  for (std::size_t i = 0; i < pins.size(); ++i) {
    const std::string path = "main.pins[" + std::to_string(i) + "]";
    Pin pin;
    pin.id = string_of(member(pins[i], "id", path), path + ".id");
    pin.pos = vec2(member(pins[i], "pos", path), path + ".pos");
    pin.net = string_of(member(pins[i], "net", path), path + ".net");
    data.pins.push_back(std::move(pin));
  }

  const json &passives = array(member(root, "passives", ""), "passives");
  for (std::size_t i = 0; i < passives.size(); ++i) {
    const std::string path = "passives[" + std::to_string(i) + "]";
    Passive p;
    p.id = string_of(member(passives[i], "id", path), path + ".id");
    p.index = i;
    p.dims = vec2(member(passives[i], "dims", path), path + ".dims");
    p.net = string_of(member(passives[i], "net", path), path + ".net");
    data.passives.push_back(std::move(p));
  }

  const json &slots = array(member(root, "slots", ""), "slots");
  for (std::size_t i = 0; i < slots.size(); ++i)
    data.slots.push_back(vec2(slots[i], "slots[" + std::to_string(i) + "]"));

  if (const auto it = root.find("excluded_nets"); it != root.end()) {
    const json &ex = array(*it, "excluded_nets");
    for (std::size_t i = 0; i < ex.size(); ++i)
      data.excluded_nets.insert(string_of(ex[i], "excluded_nets[" + std::to_string(i) + "]"));
  }
  if (const auto it = root.find("gt_tewl"); it != root.end() && !it->is_null())
    data.gt_tewl = number(*it, "gt_tewl");

  return PcbInstance(std::move(data));
}

PcbInstance load_instance(const std::filesystem::path &path) { return parse_instance(read_text_file(path)); }

std::string serialize_instance(const PcbInstance &instance) {
  json root = json::object();
  root["name"] = instance.name();
  json main = json::object();
  main["origin"] = vec_json(instance.main_footprint().origin);
  main["width"] = instance.main_footprint().width;
  main["height"] = instance.main_footprint().height;
  json pins = json::array();
  for (const Pin &pin : instance.pins())
    pins.push_back({{"id", pin.id}, {"pos", vec_json(pin.pos)}, {"net", pin.net}});
  main["pins"] = std::move(pins);
  root["main"] = std::move(main);

  json passives = json::array();
  for (const Passive &p : instance.passives())
    passives.push_back({{"id", p.id}, {"dims", vec_json(p.dims)}, {"net", p.net}});
  root["passives"] = std::move(passives);

  json slots = json::array();
  for (const CandidateSlot &s : instance.slots())
    slots.push_back(vec_json(s.anchor));
  root["slots"] = std::move(slots);

  json excluded = json::array();
  for (const std::string &net : instance.excluded_nets())
    excluded.push_back(net);
  root["excluded_nets"] = std::move(excluded);
  if (instance.gt_tewl())
    root["gt_tewl"] = *instance.gt_tewl();
  return root.dump(2) + "\n";
}

void save_instance(const PcbInstance &instance, const std::filesystem::path &path) {
  write_text_file(path, serialize_instance(instance));
}

PlacementRecord parse_placement(std::string_view text) {
  const json root = parse_json(text);
  PlacementRecord record;
  record.instance = string_of(member(root, "instance", ""), "instance");
  const json &rows = array(member(root, "assignments", ""), "assignments");
  std::vector<std::optional<std::size_t>> slots;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = "assignments[" + std::to_string(i) + "]";
    const std::size_t passive = index_of(member(rows[i], "passive", path), path + ".passive");
    const std::size_t slot = index_of(member(rows[i], "slot", path), path + ".slot");
    if (passive >= slots.size())
      slots.resize(passive + 1);
    if (slots[passive])
      bad_field(path + ".passive", "assigns passive " + std::to_string(passive) + " twice");
    slots[passive] = slot;
  }
  record.placement = Placement(std::move(slots));
  if (const auto it = root.find("tewl"); it != root.end())
    record.tewl = number(*it, "tewl");
  if (const auto it = root.find("overlaps"); it != root.end())
    record.overlaps = index_of(*it, "overlaps");
  return record;
}

PlacementRecord load_placement(const std::filesystem::path &path) { return parse_placement(read_text_file(path)); }

PlacementRecord make_placement_record(const PcbInstance &instance, const Placement &placement) {
  PlacementRecord record;
  record.instance = instance.name();
  record.placement = placement;
  record.tewl = tewl(instance, placement);
  record.overlaps = count_overlaps(instance, placement);
  return record;
}

std::string serialize_placement(const PlacementRecord &record) {
  json root = json::object();
  root["instance"] = record.instance;
  json rows = json::array();
  for (std::size_t i = 0; i < record.placement.size(); ++i)
    if (const auto &slot = record.placement.slot_of(i))
      rows.push_back({{"passive", i}, {"slot", *slot}});
  root["assignments"] = std::move(rows);
  root["tewl"] = record.tewl;
  root["overlaps"] = record.overlaps;
  return root.dump(2) + "\n";
}

void save_placement(const PlacementRecord &record, const std::filesystem::path &path) {
  write_text_file(path, serialize_placement(record));
}

std::string read_text_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw MalformedFileError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path &path, std::string_view text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

} // namespace pcbplace
