//
// seedmatch - Copyright 2026 The seedmatch Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seedmatch/harness/experiment.hpp"

namespace seedmatch {

namespace svg_detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace svg_detail

// Accuracy versus seed count, one polyline per (method, rho) with ±2 s.e.
// bars. A convenience view of the results CSV.
inline std::string render_accuracy_svg(std::span<const CellResult> results) {
  using svg_detail::num;
  const double w = 720, h = 440, left = 60, right = 170, top = 20, bottom = 50;
  const double pw = w - left - right, ph = h - top - bottom;
  std::size_t max_s = 1;
  for (const auto& r : results) max_s = std::max(max_s, r.s);
  auto x = [&](double s) { return left + pw * s / static_cast<double>(max_s); };
  auto y = [&](double a) { return top + ph * (1.0 - std::clamp(a, 0.0, 1.0)); };

  std::map<std::pair<int, double>, std::vector<CellResult>> series;
  for (const auto& r : results) series[{static_cast<int>(r.method), r.rho}].push_back(r);

  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) + "\" y2=\"" +
         num(top + ph) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" + num(top + ph) +
         "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double a = k / 4.0;
    out += "<text x=\"" + num(left - 8) + "\" y=\"" + num(y(a) + 4) + "\" font-size=\"11\" text-anchor=\"end\">" +
           num(a) + "</text>\n";
  }
  out += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(h - 12) +
         "\" font-size=\"12\" text-anchor=\"middle\">number of seeds</text>\n";
  out += "<text x=\"" + num(left + pw) + "\" y=\"" + num(top + ph + 16) +
         "\" font-size=\"11\" text-anchor=\"end\">" + std::to_string(max_s) + "</text>\n";

  std::size_t idx = 0;
  for (auto& [key, cells] : series) {
    std::sort(cells.begin(), cells.end(), [](const CellResult& a, const CellResult& b) { return a.s < b.s; });
    const char* color = palette[idx % 10];
    const bool dashed = key.first == static_cast<int>(Method::rgm);
    std::string pts;
    for (const auto& c : cells) {
      pts += num(x(static_cast<double>(c.s))) + "," + num(y(c.mean_accuracy)) + " ";
      out += "<line x1=\"" + num(x(static_cast<double>(c.s))) + "\" y1=\"" + num(y(c.mean_accuracy - 2 * c.std_error)) +
             "\" x2=\"" + num(x(static_cast<double>(c.s))) + "\" y2=\"" + num(y(c.mean_accuracy + 2 * c.std_error)) +
             "\" stroke=\"" + color + "\"/>\n";
    }
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\"" +
           (dashed ? " stroke-dasharray=\"5,3\"" : "") + " points=\"" + pts + "\"/>\n";
    const double ly = top + 14.0 * static_cast<double>(idx) + 6;
    out += "<text x=\"" + num(left + pw + 12) + "\" y=\"" + num(ly) + "\" font-size=\"11\" fill=\"" + color + "\">" +
           std::string(method_name(static_cast<Method>(key.first))) + " rho=" + num(key.second) + "</text>\n";
    ++idx;
  }
  out += "</svg>\n";
  return out;
}

// Match-frequency heat map, white (never) to dark red (most frequent).
inline std::string render_heatmap_svg(const MatchFrequencyMap& map, double cell = 6.0) {
  using svg_detail::num;
  const double side = cell * static_cast<double>(map.n);
  std::uint64_t peak = 1;
  for (const auto c : map.counts) peak = std::max(peak, c);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(side) + "\" height=\"" +
                    num(side) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < map.n; ++i) {
    for (std::size_t j = 0; j < map.n; ++j) {
      const auto c = map.count(i, j);
      if (c == 0) continue;
      const double t = static_cast<double>(c) / static_cast<double>(peak);
      const int gb = static_cast<int>(255.0 * (1.0 - t));
      const int r = static_cast<int>(255.0 - 116.0 * t);
      out += "<rect x=\"" + num(cell * static_cast<double>(j)) + "\" y=\"" + num(cell * static_cast<double>(i)) +
             "\" width=\"" + num(cell) + "\" height=\"" + num(cell) + "\" fill=\"rgb(" + std::to_string(r) + "," +
             std::to_string(gb) + "," + std::to_string(gb) + ")\"/>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace seedmatch
