// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "pcbplace/render.hpp"

namespace pcbplace {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (const char c : s)
    out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string pad(const std::string &s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

template <typename T> std::size_t index_in(std::vector<T> &list, const T &value) {
  const auto it = std::find(list.begin(), list.end(), value);
  if (it != list.end())
    return static_cast<std::size_t>(it - list.begin());
  list.push_back(value);
  return list.size() - 1;
}

} // namespace

Report emit_report(const std::vector<ReportEntry> &entries) {
  Report report;
  report.best.assign(entries.size(), false);

  std::vector<std::string> instances, methods;
  std::map<std::string, std::size_t> best_of;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    index_in(instances, entries[i].instance);
    index_in(methods, entries[i].method);
    if (!entries[i].metrics)
      continue;
    const auto it = best_of.find(entries[i].instance);
    if (it == best_of.end() || entries[i].metrics->tewl < entries[it->second].metrics->tewl)
      best_of[entries[i].instance] = i;
  }
  for (const auto &[name, idx] : best_of)
    report.best[idx] = true;

  std::ostringstream csv;
  csv << "instance,method,tewl,overlap_pairs,crossing_count,seconds,gt_tewl,tewl_vs_gt_ratio,best,error\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ReportEntry &e = entries[i];
    csv << csv_field(e.instance) << ',' << csv_field(e.method) << ',';
    if (e.metrics)
      csv << fixed(e.metrics->tewl, 3) << ',' << e.metrics->overlap_pairs << ',' << e.metrics->crossing_count;
    else
      csv << ",,";
    csv << ',' << fixed(e.seconds, 3) << ',';
    if (e.gt_tewl)
      csv << fixed(*e.gt_tewl, 3);
    csv << ',';
    if (e.gt_tewl && e.metrics && *e.gt_tewl > 0.0)
      csv << fixed(e.metrics->tewl / *e.gt_tewl, 3);
    csv << ',' << (report.best[i] ? 1 : 0) << ',' << csv_field(e.error) << '\n';
  }
  report.csv = csv.str();

  // Instances on rows, methods on columns.
  std::vector<std::vector<std::string>> grid(instances.size() + 1,
                                             std::vector<std::string>(methods.size() + 2, "-"));
  grid[0][0] = "instance";
  for (std::size_t m = 0; m < methods.size(); ++m)
    grid[0][m + 1] = methods[m];
  grid[0][methods.size() + 1] = "GT";
  for (std::size_t r = 0; r < instances.size(); ++r)
    grid[r + 1][0] = instances[r];
  std::vector<std::size_t> overlap_total(methods.size(), 0), crossing_total(methods.size(), 0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ReportEntry &e = entries[i];
    const std::size_t r = index_in(instances, e.instance) + 1;
    const std::size_t m = index_in(methods, e.method);
    if (e.gt_tewl)
      grid[r][methods.size() + 1] = fixed(*e.gt_tewl, 1);
    if (!e.metrics) {
      grid[r][m + 1] = "failed";
      continue;
    }
    grid[r][m + 1] = fixed(e.metrics->tewl, 1) + (report.best[i] ? "*" : "");
    overlap_total[m] += e.metrics->overlap_pairs;
    crossing_total[m] += e.metrics->crossing_count;
  }
  std::vector<std::string> overlaps_row{"overlap pairs"}, crossings_row{"crossings"};
  for (std::size_t m = 0; m < methods.size(); ++m) {
    overlaps_row.push_back(std::to_string(overlap_total[m]));
    crossings_row.push_back(std::to_string(crossing_total[m]));
  }

  std::vector<std::size_t> width(methods.size() + 2, 0);
  for (const auto &row : grid)
    for (std::size_t c = 0; c < row.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  for (const auto *row : {&overlaps_row, &crossings_row})
    for (std::size_t c = 0; c < row->size(); ++c)
      width[c] = std::max(width[c], (*row)[c].size());

  std::ostringstream table;
  auto emit = [&](const std::vector<std::string> &row) {
    for (std::size_t c = 0; c < row.size(); ++c)
      table << (c ? "  " : "") << pad(row[c], width[c]);
    table << '\n';
  };
  table << "TEWL (lower is better, * = best per instance)\n";
  for (const auto &row : grid)
    emit(row);
  table << "\nTotals over instances (crossings approximate routing conflicts)\n";
  emit(overlaps_row);
  emit(crossings_row);
  report.table = table.str();
  return report;
}

} // namespace pcbplace
