#include "secroute/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "secroute/error.hpp"
#include "secroute/pathcost.hpp"

namespace secroute {

namespace {

struct DisjointSets {
  std::vector<std::int32_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::int32_t find(std::int32_t v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  }
  void join(std::int32_t a, std::int32_t b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

Point midpoint(const Point& a, const Point& b) { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

}  // namespace

void validate_config(const NetworkConfig& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::kInvalidParameter, what);
  };
  require(c.side_length > 0.0 && std::isfinite(c.side_length), "side length must be positive");
  require(c.node_density > 0.0 && std::isfinite(c.node_density), "node density must be positive");
  require(c.eave_density > 0.0 && std::isfinite(c.eave_density), "eavesdropper density must be positive");
  require(c.eave_radius > 0.0, "eavesdropper radius must be positive");
  require(c.jammer_count >= 1, "at least one jammer per link is required");
  require(c.pi > 0.0 && c.pi < 1.0, "pi must lie in (0, 1)");
  require(c.runs >= 1, "runs must be at least 1");
  const long n = std::lround(c.node_density * c.side_length * c.side_length);
  require(n >= 2, "the network needs at least two nodes");
  require(n <= 100000, "the network is too large");
  ChannelParams check(c.channel);
  (void)check;
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), 0x5ec0u};
  return std::mt19937_64(seq);
}

std::vector<Point> place_nodes(const NetworkConfig& config, std::mt19937_64& rng) {
  const double l = config.side_length;
  const auto n = static_cast<std::size_t>(std::lround(config.node_density * l * l));
  std::uniform_real_distribution<double> coord(0.0, l);
  std::vector<Point> nodes(n);
  nodes.front() = {0.0, 0.0};
  nodes.back() = {l, l};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double x = coord(rng);
    nodes[i] = {x, coord(rng)};
  }
  return nodes;
}

std::vector<Point> place_eaves(const NetworkConfig& config, std::mt19937_64& rng) {
  const double l = config.side_length;
  std::vector<Point> eaves;
  if (config.placement == Placement::kUniform) {
    const auto n = std::max<long>(1, std::lround(config.eave_density * l * l));
    std::uniform_real_distribution<double> coord(0.0, l);
    for (long i = 0; i < n; ++i) {
      const double x = coord(rng);
      eaves.push_back({x, coord(rng)});
    }
    return eaves;
  }
  const auto n = std::max<long>(1, std::lround(config.eave_density * l));
  std::uniform_real_distribution<double> jitter(-0.25, 0.25);
  const double unit = std::sqrt(0.5);
  for (long i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(n) * l;
    const double off = jitter(rng);
    eaves.push_back({t - off * unit, t + off * unit});
  }
  return eaves;
}

double link_range(const ChannelParams& params) {
  if (!std::isfinite(params.p_max())) return std::numeric_limits<double>::infinity();
  // P_S = gamma_d k_rho d^alpha.
  return std::pow(params.p_max() / (params.gamma_d() * params.k_rho()), 1.0 / params.alpha());
}

bool connected_at(const ChannelParams& params, const std::vector<Point>& nodes, NodeId a, NodeId b, double p_max) {
  DisjointSets sets(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double d = distance(nodes[i], nodes[j]);
      if (d > 0.0 && source_power(params, d) <= p_max) {
        sets.join(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
      }
    }
  }
  return sets.find(a) == sets.find(b);
}

double calibrate_p_max(const ChannelParams& params, const std::vector<Point>& nodes, NodeId source, NodeId target) {
  auto joined = [&](double p) { return connected_at(params, nodes, source, target, p); };
  double shortest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const double d = distance(nodes[i], nodes[j]);
      if (d > 0.0) shortest = std::min(shortest, d);
    }
  }
  if (!std::isfinite(shortest)) fail(ErrorKind::kDegenerateGeometry, "all nodes are co-located");
  double hi = source_power(params, shortest);
  int doublings = 0;
  while (!joined(hi)) {
    if (++doublings > 64) fail(ErrorKind::kDegenerateGeometry, "no power level connects source and target");
    hi *= 2.0;
  }
  double lo = hi / 2.0;
  if (doublings == 0) {
    // The closest pair alone connects them, so nothing smaller can.
    return hi;
  }
  while (hi > 1.01 * lo) {
    const double mid = std::sqrt(lo * hi);
    (joined(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::vector<EaveLocation> assign_eaves(const std::vector<Point>& eaves, const Point& a, const Point& b,
                                       EaveAssignment mode, double radius) {
  if (eaves.empty()) fail(ErrorKind::kInvalidParameter, "no eavesdroppers to assign");
  const Point m = midpoint(a, b);
  std::vector<EaveLocation> out;
  if (mode == EaveAssignment::kRadius) {
    for (const Point& e : eaves) {
      if (distance(e, m) <= radius) out.push_back({e, 1.0});
    }
    if (!out.empty()) return out;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < eaves.size(); ++i) {
    if (distance(eaves[i], m) < distance(eaves[best], m)) best = i;
  }
  out.push_back({eaves[best], 1.0});
  return out;
}

std::vector<NodeId> assign_jammers(const std::vector<Point>& nodes, NodeId sender, NodeId receiver, std::int32_t k) {
  std::vector<NodeId> ids;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto id = static_cast<NodeId>(i);
    if (id != sender && id != receiver) ids.push_back(id);
  }
  const Point& r = nodes[static_cast<std::size_t>(receiver)];
  const auto take = std::min<std::size_t>(ids.size(), static_cast<std::size_t>(std::max(0, k)));
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(), [&](NodeId a, NodeId b) {
    const double da = distance(nodes[static_cast<std::size_t>(a)], r);
    const double db = distance(nodes[static_cast<std::size_t>(b)], r);
    return da != db ? da < db : a < b;
  });
  ids.resize(take);
  return ids;
}

std::vector<LinkSpec> build_links(const ChannelParams& params, const std::vector<Point>& nodes,
                                  const std::vector<Point>& eaves, const NetworkConfig& config, bool& shortfall) {
  std::vector<LinkSpec> links;
  shortfall = false;
  for (std::size_t u = 0; u < nodes.size(); ++u) {
    for (std::size_t v = 0; v < nodes.size(); ++v) {
      if (u == v) continue;
      const double d = distance(nodes[u], nodes[v]);
      if (!(d > 0.0) || source_power(params, d) > params.p_max()) continue;
      LinkSpec link;
      link.source_id = static_cast<NodeId>(u);
      link.source = nodes[u];
      link.dest_id = static_cast<NodeId>(v);
      link.dest = nodes[v];
      link.eaves = assign_eaves(eaves, nodes[u], nodes[v], config.assignment, config.eave_radius);
      const auto jammers = assign_jammers(nodes, link.source_id, link.dest_id, config.jammer_count);
      if (static_cast<std::int32_t>(jammers.size()) < config.jammer_count) shortfall = true;
      if (jammers.empty()) fail(ErrorKind::kInvalidParameter, "no node is available to jam");
      for (NodeId j : jammers) link.jammers.push_back(nodes[static_cast<std::size_t>(j)]);
      links.push_back(std::move(link));
    }
  }
  return links;
}

CostGraph price_links(const ChannelParams& params, const std::vector<LinkSpec>& links, std::int32_t node_count,
                      double pi) {
  CostGraph g;
  g.node_count = node_count;
  g.edges.reserve(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    const C1C2 c = link_c1_c2(params, links[i], pi);
    g.add_edge(links[i].source_id, links[i].dest_id, c.c1, c.c2, static_cast<std::int32_t>(i));
  }
  return g;
}

NetworkInstance generate_network(const NetworkConfig& config, std::uint64_t seed) {
  validate_config(config);
  NetworkInstance net;
  net.seed = seed;
  std::mt19937_64 node_rng = make_rng(seed, 1);
  std::mt19937_64 eave_rng = make_rng(seed, 2);
  net.nodes = place_nodes(config, node_rng);
  net.eaves = place_eaves(config, eave_rng);
  net.source = 0;
  net.target = static_cast<NodeId>(net.nodes.size() - 1);
  const ChannelParams base(config.channel);
  const double p_max = std::isfinite(config.channel.p_max) ? config.channel.p_max
                                                            : calibrate_p_max(base, net.nodes, net.source, net.target);
  net.params = base.with_p_max(p_max);
  net.links = build_links(net.params, net.nodes, net.eaves, config, net.jammer_shortfall);
  net.graph = price_links(net.params, net.links, static_cast<std::int32_t>(net.nodes.size()), config.pi);
  return net;
}

LinkSpec random_link(std::mt19937_64& rng, std::size_t locations, std::size_t jammers) {
  if (locations == 0 || jammers == 0) fail(ErrorKind::kInvalidParameter, "a link needs locations and jammers");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2.0 * std::acos(-1.0);
  LinkSpec link;
  link.source_id = 0;
  link.source = {0.0, 0.0};
  link.dest_id = 1;
  const double d = 0.5 + unit(rng);
  const double a = two_pi * unit(rng);
  link.dest = {d * std::cos(a), d * std::sin(a)};
  for (std::size_t j = 0; j < jammers; ++j) {
    const double r = 0.5 * unit(rng);
    const double b = two_pi * unit(rng);
    link.jammers.push_back({link.dest.x + r * std::cos(b), link.dest.y + r * std::sin(b)});
  }
  while (link.eaves.size() < locations) {
    const double x = -2.0 + 5.0 * unit(rng);
    const Point p{x, -2.0 + 5.0 * unit(rng)};
    const double prob = 0.2 + 0.8 * unit(rng);
    bool clear = distance(p, link.source) >= 0.05;
    for (const Point& j : link.jammers) clear = clear && distance(p, j) >= 0.05;
    if (clear) link.eaves.push_back({p, prob});
  }
  return link;
}

}  // namespace secroute
