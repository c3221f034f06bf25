#pragma once

#include <string>
#include <vector>

#include "secroute/experiments.hpp"
#include "secroute/network.hpp"

namespace secroute {

/// Grey-level map of link cost; darker is more expensive, on a log scale.
std::string heatmap_svg(const HeatmapGrid& grid);

/// Nodes, eavesdroppers (stars) and the given routes over the square.
std::string network_svg(const NetworkInstance& net, double side, const std::vector<DrawnPath>& paths);

}  // namespace secroute
