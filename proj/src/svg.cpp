#include "mobiplan/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace mobiplan {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

constexpr double kPixelsPerMetre = 200.0;
constexpr double kPad = 40.0;
constexpr double kArrow = 0.25;  // m

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

}  // namespace

std::string cluster_colour(std::size_t index) {
  if (index < kPaletteSize) return kPalette[index];
  // Walk hue by the golden angle and cycle lightness so later indices stay
  // distinct from each other and from the fixed palette.
  const std::size_t k = index - kPaletteSize;
  const int hue = static_cast<int>((k * 137) % 360);
  const int light = 35 + static_cast<int>((k / 360) % 5) * 8;
  const int sat = 55 + static_cast<int>(k % 3) * 15;
  char buf[48];
  std::snprintf(buf, sizeof buf, "hsl(%d,%d%%,%d%%)", hue, sat, light);
  return buf;
}

std::string render_svg(const Plan& plan, std::span<const Target> targets) {
  double lo_x = plan.home_base.x, hi_x = plan.home_base.x;
  double lo_y = plan.home_base.y, hi_y = plan.home_base.y;
  auto grow = [&](double x, double y) {
    lo_x = std::min(lo_x, x);
    hi_x = std::max(hi_x, x);
    lo_y = std::min(lo_y, y);
    hi_y = std::max(hi_y, y);
  };
  for (const Target& t : targets) grow(t.x, t.y);
  for (const Cluster& c : plan.clusters) grow(c.base.x, c.base.y);
  lo_x -= kArrow;
  lo_y -= kArrow;
  hi_x += kArrow;
  hi_y += kArrow;

  const double width = (hi_x - lo_x) * kPixelsPerMetre + 2 * kPad;
  const double height = (hi_y - lo_y) * kPixelsPerMetre + 2 * kPad;
  auto sx = [&](double x) { return fmt((x - lo_x) * kPixelsPerMetre + kPad); };
  auto sy = [&](double y) { return fmt((hi_y - y) * kPixelsPerMetre + kPad); };

  std::vector<int> owner(targets.size(), -1);
  for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
    for (int i : plan.clusters[c].target_indices) {
      if (i >= 0 && static_cast<std::size_t>(i) < targets.size()) owner[static_cast<std::size_t>(i)] = static_cast<int>(c);
    }
  }

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) + "\" height=\"" +
       fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
  s += "<defs><marker id=\"head\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" orient=\"auto\">"
       "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"#000000\"/></marker></defs>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Base tour, home to home.
  std::string pts;
  for (int c : plan.base_sequence) {
    const BasePose& b = c == kHome ? plan.home_base : plan.clusters[static_cast<std::size_t>(c)].base;
    if (!pts.empty()) pts += ' ';
    pts += sx(b.x) + "," + sy(b.y);
  }
  if (!pts.empty()) {
    s += "<polyline class=\"tour\" points=\"" + pts +
         "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
  }

  for (std::size_t i = 0; i < targets.size(); ++i) {
    const std::string colour = owner[i] >= 0 ? cluster_colour(static_cast<std::size_t>(owner[i])) : "#000000";
    s += "<circle class=\"target\" cx=\"" + sx(targets[i].x) + "\" cy=\"" + sy(targets[i].y) +
         "\" r=\"3\" fill=\"" + colour + "\"/>\n";
  }

  for (std::size_t c = 0; c < plan.clusters.size(); ++c) {
    const BasePose& b = plan.clusters[c].base;
    const std::string colour = cluster_colour(c);
    s += "<circle class=\"base\" cx=\"" + sx(b.x) + "\" cy=\"" + sy(b.y) + "\" r=\"7\" fill=\"none\" stroke=\"" +
         colour + "\" stroke-width=\"2.5\"/>\n";
    s += "<line class=\"arrow\" x1=\"" + sx(b.x) + "\" y1=\"" + sy(b.y) + "\" x2=\"" +
         sx(b.x + kArrow * std::cos(b.yaw)) + "\" y2=\"" + sy(b.y + kArrow * std::sin(b.yaw)) + "\" stroke=\"" +
         colour + "\" stroke-width=\"2\" marker-end=\"url(#head)\"/>\n";
  }

  s += "<rect class=\"home\" x=\"" + fmt((plan.home_base.x - lo_x) * kPixelsPerMetre + kPad - 5) + "\" y=\"" +
       fmt((hi_y - plan.home_base.y) * kPixelsPerMetre + kPad - 5) +
       "\" width=\"10\" height=\"10\" fill=\"#000000\"/>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace mobiplan
