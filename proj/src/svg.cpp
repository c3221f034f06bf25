#include "secroute/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

namespace secroute {

namespace {

constexpr double kCanvas = 600.0;
constexpr double kMargin = 20.0;

const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// Square world [0, side]^2 mapped onto the canvas with y pointing up.
struct Frame {
  double side;
  double sx(double x) const { return kMargin + x / side * (kCanvas - 2 * kMargin); }
  double sy(double y) const { return kCanvas - kMargin - y / side * (kCanvas - 2 * kMargin); }
};

void open_svg(std::ostringstream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas << "\" height=\"" << kCanvas
      << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void star(std::ostringstream& out, double cx, double cy, double r) {
  out << "<polygon fill=\"black\" points=\"";
  for (int k = 0; k < 10; ++k) {
    const double a = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
    const double rr = k % 2 == 0 ? r : r * 0.45;
    out << num(cx + rr * std::cos(a)) << ',' << num(cy + rr * std::sin(a)) << (k < 9 ? " " : "");
  }
  out << "\"/>\n";
}

}  // namespace

std::string heatmap_svg(const HeatmapGrid& grid) {
  std::ostringstream out;
  open_svg(out);
  const Frame f{grid.side};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double e : grid.energy) {
    if (std::isfinite(e) && e > 0.0) {
      lo = std::min(lo, std::log(e));
      hi = std::max(hi, std::log(e));
    }
  }
  const double span = hi > lo ? hi - lo : 1.0;
  const double cell = (kCanvas - 2 * kMargin) / static_cast<double>(grid.resolution - 1);
  const double step = grid.side / static_cast<double>(grid.resolution - 1);
  for (std::size_t iy = 0; iy < grid.resolution; ++iy) {
    for (std::size_t ix = 0; ix < grid.resolution; ++ix) {
      const double e = grid.energy[iy * grid.resolution + ix];
      std::string fill = "#ff00ff";
      if (std::isfinite(e) && e > 0.0) {
        const int g = static_cast<int>(std::lround(255.0 * (1.0 - (std::log(e) - lo) / span)));
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", g, g, g);
        fill = buf;
      }
      out << "<rect x=\"" << num(f.sx(static_cast<double>(ix) * step) - cell / 2) << "\" y=\""
          << num(f.sy(static_cast<double>(iy) * step) - cell / 2) << "\" width=\"" << num(cell) << "\" height=\""
          << num(cell) << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  auto dot = [&](const Point& p, const char* colour, const char* label) {
    out << "<circle cx=\"" << num(f.sx(p.x)) << "\" cy=\"" << num(f.sy(p.y)) << "\" r=\"6\" fill=\"" << colour
        << "\"/>\n<text x=\"" << num(f.sx(p.x) + 8) << "\" y=\"" << num(f.sy(p.y) - 8)
        << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"" << colour << "\">" << label << "</text>\n";
  };
  dot(grid.source, "#1f77b4", "S");
  dot(grid.dest, "#2ca02c", "D");
  for (const Point& j : grid.jammers) dot(j, "#d62728", "J");
  out << "</svg>\n";
  return out.str();
}

std::string network_svg(const NetworkInstance& net, double side, const std::vector<DrawnPath>& paths) {
  std::ostringstream out;
  open_svg(out);
  const Frame f{side};
  out << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kCanvas - 2 * kMargin)
      << "\" height=\"" << num(kCanvas - 2 * kMargin) << "\" fill=\"none\" stroke=\"#999999\"/>\n";
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const char* colour = kPalette[k % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" stroke-opacity=\"0.8\" points=\"";
    for (std::size_t i = 0; i < paths[k].nodes.size(); ++i) {
      const Point& p = net.nodes[static_cast<std::size_t>(paths[k].nodes[i])];
      out << num(f.sx(p.x)) << ',' << num(f.sy(p.y)) << (i + 1 < paths[k].nodes.size() ? " " : "");
    }
    out << "\"/>\n<text x=\"" << num(kMargin + 6) << "\" y=\"" << num(kMargin + 18 + 16.0 * static_cast<double>(k))
        << "\" font-family=\"sans-serif\" font-size=\"14\" fill=\"" << colour << "\">" << paths[k].label
        << "</text>\n";
  }
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    const bool end = static_cast<NodeId>(i) == net.source || static_cast<NodeId>(i) == net.target;
    out << "<circle cx=\"" << num(f.sx(net.nodes[i].x)) << "\" cy=\"" << num(f.sy(net.nodes[i].y)) << "\" r=\""
        << (end ? 6 : 3) << "\" fill=\"" << (end ? "#1f77b4" : "#555555") << "\"/>\n";
  }
  for (const Point& e : net.eaves) star(out, f.sx(e.x), f.sy(e.y), 7.0);
  out << "</svg>\n";
  return out.str();
}

}  // namespace secroute
