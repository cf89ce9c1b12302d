#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "hnnd/dataset.hpp"
#include "hnnd/errors.hpp"

namespace hnnd {

/// Reads "id,label" rows as written by write_labels; ids must run 0..N-1.
inline std::vector<std::string> read_labels_file(std::istream& in) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    const auto body = detail::trim(line);
    if (body.empty()) continue;
    const auto cells = detail::split_cells(body, Delimiter::comma);
    if (cells.size() != 2 || cells[1].empty()) {
      throw ParseError("labels row " + std::to_string(labels.size()) + ": expected 'id,label'");
    }
    if (cells[0] != std::to_string(labels.size())) {
      throw ParseError("labels row " + std::to_string(labels.size()) + ": ids must be consecutive from 0");
    }
    labels.emplace_back(cells[1]);
  }
  if (labels.empty()) throw ParseError("labels file is empty");
  return labels;
}

/// Scatter plot of 2-D points as SVG, one fill colour per label.
inline void render_svg(const Dataset& ds, const std::vector<std::string>& labels, std::ostream& out,
                       double width = 640.0, double height = 640.0) {
  if (ds.kind() != DataKind::numeric || ds.dim() != 2) {
    throw UsageError("render2d needs 2-dimensional numeric data");
  }
  if (labels.size() != ds.size()) {
    throw UsageError("labels file has " + std::to_string(labels.size()) + " rows, dataset has " +
                     std::to_string(ds.size()));
  }
  static constexpr std::array<const char*, 12> palette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
      "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#b5cf6b"};
  std::map<std::string, std::size_t> colour;
  for (const auto& l : labels) colour.try_emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, c] : colour) c = next++;

  double lo_x = ds.value(0, 0), hi_x = lo_x, lo_y = ds.value(0, 1), hi_y = lo_y;
  for (std::size_t i = 1; i < ds.size(); ++i) {
    lo_x = std::min(lo_x, ds.value(i, 0));
    hi_x = std::max(hi_x, ds.value(i, 0));
    lo_y = std::min(lo_y, ds.value(i, 1));
    hi_y = std::max(hi_y, ds.value(i, 1));
  }
  const double margin = 10.0;
  const double sx = hi_x > lo_x ? (width - 2 * margin) / (hi_x - lo_x) : 0.0;
  const double sy = hi_y > lo_y ? (height - 2 * margin) / (hi_y - lo_y) : 0.0;

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double x = margin + (ds.value(i, 0) - lo_x) * sx;
    const double y = height - margin - (ds.value(i, 1) - lo_y) * sy;
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\""
        << palette[colour[labels[i]] % palette.size()] << "\"><title>" << i << ":" << labels[i]
        << "</title></circle>\n";
  }
  out << "</svg>\n";
}

}  // namespace hnnd
