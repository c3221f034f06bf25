#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "secroute/channel.hpp"
#include "secroute/graph.hpp"
#include "secroute/linkcost.hpp"

namespace secroute {

enum class Placement { kUniform, kDiagonal };
enum class EaveAssignment { kNearest, kRadius };

struct NetworkConfig {
  double side_length = 5.0;
  double node_density = 3.0;
  double eave_density = 1.0;
  Placement placement = Placement::kUniform;
  EaveAssignment assignment = EaveAssignment::kNearest;
  double eave_radius = 1.0;  // kRadius only
  std::int32_t jammer_count = 2;
  double pi = 0.1;
  ChannelSettings channel;
  std::uint64_t seed = 1;
  std::int32_t runs = 10;
};

void validate_config(const NetworkConfig& config);

struct NetworkInstance {
  std::uint64_t seed = 0;
  ChannelParams params;  // carries the calibrated p_max
  std::vector<Point> nodes;
  std::vector<Point> eaves;
  NodeId source = 0;
  NodeId target = 0;
  std::vector<LinkSpec> links;
  CostGraph graph;              // edges priced for config.pi; edge.link indexes links
  bool jammer_shortfall = false;
};

/// round(sigma L^2) nodes; the source sits at (0, 0) as node 0 and the target
/// at (L, L) as the last node.
std::vector<Point> place_nodes(const NetworkConfig& config, std::mt19937_64& rng);

/// Uniform: round(sigma_E L^2) points in the square. Diagonal: round(sigma_E L)
/// points evenly spaced along the source-target diagonal, each pushed sideways
/// by a uniform offset in [-0.25, 0.25].
std::vector<Point> place_eaves(const NetworkConfig& config, std::mt19937_64& rng);

/// Smallest power (within 1%) at which source and target are joined by links
/// with P_S <= p_max. Throws kDegenerateGeometry after 64 doublings.
double calibrate_p_max(const ChannelParams& params, const std::vector<Point>& nodes, NodeId source, NodeId target);

/// Union-find test over undirected pairs whose source power is at most p_max.
bool connected_at(const ChannelParams& params, const std::vector<Point>& nodes, NodeId a, NodeId b, double p_max);

/// Largest distance a link can span at the params' p_max.
double link_range(const ChannelParams& params);

/// Nearest eavesdropper to the link midpoint (ties by index), or every one
/// within `radius` of it, falling back to the nearest when none is that close.
std::vector<EaveLocation> assign_eaves(const std::vector<Point>& eaves, const Point& a, const Point& b,
                                       EaveAssignment mode, double radius);

/// The k nodes nearest the receiver other than the two endpoints, ties by id.
/// Returns fewer when the network is too small.
std::vector<NodeId> assign_jammers(const std::vector<Point>& nodes, NodeId sender, NodeId receiver, std::int32_t k);

/// Every ordered pair within range becomes a link.
std::vector<LinkSpec> build_links(const ChannelParams& params, const std::vector<Point>& nodes,
                                  const std::vector<Point>& eaves, const NetworkConfig& config, bool& shortfall);

/// One edge per link with c1 = P_S - y and c2 = x / sqrt(pi).
CostGraph price_links(const ChannelParams& params, const std::vector<LinkSpec>& links, std::int32_t node_count,
                      double pi);

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream);

NetworkInstance generate_network(const NetworkConfig& config, std::uint64_t seed);

/// A standalone link for coding checks: source at the origin, destination
/// 0.5 to 1.5 away, `jammers` helpers within 0.5 of the destination and
/// `locations` eavesdropping positions in [-2, 3]^2 with probabilities in
/// [0.2, 1]. Positions closer than 0.05 to the source or a jammer are redrawn.
LinkSpec random_link(std::mt19937_64& rng, std::size_t locations, std::size_t jammers = 2);

}  // namespace secroute
