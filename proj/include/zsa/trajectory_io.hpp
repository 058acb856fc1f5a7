#pragma once

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>
#include <system_error>

#include "zsa/dynamics.hpp"
#include "zsa/game.hpp"

namespace zsa {

/// Shortest round-trip decimal representation.
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf, res.ptr);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Column names for the coordinates of a mixed profile: plain labels in
/// symmetric games, "x:<row label>" and "y:<col label>" otherwise.
inline std::vector<std::string> coordinate_labels(const Game& g) {
  std::vector<std::string> out;
  if (g.is_symmetric()) return g.row_labels();
  for (const auto& l : g.row_labels()) out.push_back("x:" + l);
  for (const auto& l : g.col_labels()) out.push_back("y:" + l);
  return out;
}

/// Header `t,<coordinates...>,x_H,payoff,dist_content`, one row per sample.
/// x_H and dist_content are empty when no profile set was tracked.
inline std::string trajectory_csv(const Game& g, const Trajectory& tr) {
  std::ostringstream out;
  out << "t";
  for (const auto& l : coordinate_labels(g)) out << ',' << csv_field(l);
  out << ",x_H,payoff,dist_content\n";
  for (std::size_t k = 0; k < tr.size(); ++k) {
    out << format_double(tr.times[k]);
    const MixedProfile& z = tr.states[k];
    for (Eigen::Index i = 0; i < z.first.size(); ++i) out << ',' << format_double(z.first[i]);
    for (Eigen::Index i = 0; i < z.second.size(); ++i) out << ',' << format_double(z.second[i]);
    out << ',' << (tr.mass.empty() ? "" : format_double(tr.mass[k]));
    out << ',' << format_double(tr.payoff[k]);
    out << ',' << (tr.distance.empty() ? "" : format_double(tr.distance[k]));
    out << '\n';
  }
  return out.str();
}

/// Self-contained SVG line chart of x_H and dist_content against t.
/// Long trajectories are thinned to at most `max_points` vertices per curve.
inline std::string trajectory_svg(const Trajectory& tr, std::size_t max_points = 2000) {
  constexpr double width = 800, height = 400, left = 60, right = 20, top = 30, bottom = 50;
  const double plot_w = width - left - right, plot_h = height - top - bottom;
  const double t0 = tr.times.empty() ? 0.0 : tr.times.front();
  const double t1 = tr.times.empty() ? 1.0 : tr.times.back();
  const double span = t1 > t0 ? t1 - t0 : 1.0;
  auto px = [&](double t) { return left + (t - t0) / span * plot_w; };
  auto py = [&](double v) { return top + (1.0 - std::clamp(v, 0.0, 1.0)) * plot_h; };
  const std::size_t stride = std::max<std::size_t>(1, (tr.size() + max_points - 1) / std::max<std::size_t>(1, max_points));

  auto polyline = [&](const std::vector<double>& series, const char* colour) {
    std::ostringstream s;
    s << "  <polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series.size(); k += stride) {
      s << format_double(px(tr.times[k])) << ',' << format_double(py(series[k])) << ' ';
    }
    if (!series.empty() && (series.size() - 1) % stride != 0) {
      s << format_double(px(tr.times.back())) << ',' << format_double(py(series.back()));
    }
    s << "\"/>\n";
    return s.str();
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";
  out << "  <text x=\"" << left - 8 << "\" y=\"" << top + 4 << "\" text-anchor=\"end\" font-size=\"12\">1</text>\n";
  out << "  <text x=\"" << left - 8 << "\" y=\"" << top + plot_h + 4
      << "\" text-anchor=\"end\" font-size=\"12\">0</text>\n";
  out << "  <text x=\"" << left << "\" y=\"" << height - 15 << "\" font-size=\"12\">t = " << format_double(t0)
      << "</text>\n";
  out << "  <text x=\"" << left + plot_w << "\" y=\"" << height - 15 << "\" text-anchor=\"end\" font-size=\"12\">t = "
      << format_double(t1) << "</text>\n";
  if (!tr.mass.empty()) {
    out << polyline(tr.mass, "steelblue");
    out << polyline(tr.distance, "firebrick");
    out << "  <text x=\"" << left + 10 << "\" y=\"" << top - 10
        << "\" font-size=\"12\" fill=\"steelblue\">x_H</text>\n";
    out << "  <text x=\"" << left + 60 << "\" y=\"" << top - 10
        << "\" font-size=\"12\" fill=\"firebrick\">dist_content</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace zsa
