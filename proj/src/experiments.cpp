#include "secroute/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include "secroute/approx.hpp"
#include "secroute/error.hpp"
#include "secroute/pathcost.hpp"

namespace secroute {

namespace {

// One point of an experiment's sweep; every seed runs it once.
struct Sweep {
  std::string experiment;
  double param = 0.0;
  NetworkConfig config;
  bool allocation = false;
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::vector<DrawnPath> paths;
  std::optional<NetworkInstance> net;
  std::string error;
  bool shortfall = false;
};

const std::vector<double> kDensityScale{0.5, 1.0, 1.5, 2.0};
const std::vector<double> kPiLevels{0.01, 0.05, 0.1, 0.2};
const std::vector<double> kSides{3.0, 4.0, 5.0, 6.0, 7.0};
const std::vector<std::int32_t> kJammerCounts{1, 2, 3, 4};

std::string epsilon_label(double eps) {
  char buf[32];
  if (std::fabs(eps * 10.0 - std::round(eps * 10.0)) < 1e-12) {
    std::snprintf(buf, sizeof buf, "%.1f-SMER", eps);
  } else {
    std::snprintf(buf, sizeof buf, "%g-SMER", eps);
  }
  return buf;
}

std::vector<Sweep> build_sweeps(ExperimentKind kind, const NetworkConfig& base) {
  std::vector<Sweep> out;
  auto with_placement = [&](Placement p) {
    NetworkConfig c = base;
    c.placement = p;
    return c;
  };
  auto density_sweep = [&](const std::string& name, const NetworkConfig& c, bool allocation) {
    for (double s : kDensityScale) {
      NetworkConfig v = c;
      v.eave_density = c.eave_density * s;
      out.push_back({name, v.eave_density, v, allocation});
    }
  };
  auto pi_sweep = [&](const std::string& name, const NetworkConfig& c, bool allocation) {
    for (double pi : kPiLevels) {
      NetworkConfig v = c;
      v.pi = pi;
      out.push_back({name, pi, v, allocation});
    }
  };
  switch (kind) {
    case ExperimentKind::kHeatmap:
      break;
    case ExperimentKind::kAllocation:
      density_sweep("allocation_density", base, true);
      pi_sweep("allocation_prob", base, true);
      break;
    case ExperimentKind::kSnapshot: {
      const NetworkConfig c = with_placement(Placement::kDiagonal);
      out.push_back({"snapshot", c.eave_density, c, false});
      break;
    }
    case ExperimentKind::kUniform: {
      const NetworkConfig c = with_placement(Placement::kUniform);
      density_sweep("uniform_density", c, false);
      pi_sweep("uniform_prob", c, false);
      break;
    }
    case ExperimentKind::kSize:
      for (auto [name, p] : {std::pair{"size_diag", Placement::kDiagonal}, std::pair{"size_uniform", Placement::kUniform}}) {
        for (double side : kSides) {
          NetworkConfig c = with_placement(p);
          c.side_length = side;
          out.push_back({name, side, c, false});
        }
      }
      break;
    case ExperimentKind::kJammers:
      for (auto [name, p] :
           {std::pair{"jammers_diag", Placement::kDiagonal}, std::pair{"jammers_uniform", Placement::kUniform}}) {
        for (std::int32_t k : kJammerCounts) {
          NetworkConfig c = with_placement(p);
          c.jammer_count = k;
          out.push_back({name, static_cast<double>(k), c, false});
        }
      }
      break;
  }
  return out;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

RunOutput run_one(const Sweep& sweep, std::uint64_t seed, const ExperimentOptions& options, bool keep_network) {
  RunOutput out;
  const NetworkInstance net = generate_network(sweep.config, seed);
  out.shortfall = net.jammer_shortfall;
  const double pi = sweep.config.pi;
  auto row = [&](const std::string& algorithm, double energy, double benchmark, std::size_t hops, double ms) {
    ResultRow r;
    r.experiment = sweep.experiment;
    r.seed = seed;
    r.alpha = sweep.config.channel.alpha;
    r.param = sweep.param;
    r.algorithm = algorithm;
    r.energy = energy;
    r.savings_pct = savings_percent(benchmark, energy);
    r.hops = static_cast<double>(hops);
    r.runtime_ms = options.timing ? ms : 0.0;
    out.rows.push_back(r);
  };

  auto t0 = std::chrono::steady_clock::now();
  RouteResult base = sasp(net.params, net.graph, net.links, net.source, net.target);
  const double base_ms = elapsed_ms(t0);
  annotate_route(net.params, net.graph, net.links, pi, base);

  if (sweep.allocation) {
    const PathSpec path = route_path(net.graph, net.links, base);
    const SecrecyAllocation equal = equal_allocation(path.links.size(), pi);
    const double equal_energy = path_energy_for(net.params, path, equal.pi_per_link);
    row("SASP-equal", equal_energy, equal_energy, base.edges.size(), base_ms);
    row("SASP", base.energy, equal_energy, base.edges.size(), base_ms);
    return out;
  }

  row("SASP", base.energy, base.energy, base.edges.size(), base_ms);
  const double quantum = options.quantum > 0.0 ? options.quantum : default_quantum(net.graph);
  const QuantizedGraph q = quantize(net.graph, quantum);

  t0 = std::chrono::steady_clock::now();
  RouteResult dp = dp_smer(q, net.source, net.target);
  const double dp_ms = elapsed_ms(t0);
  annotate_route(net.params, net.graph, net.links, pi, dp);
  row("DP-SMER", dp.energy, base.energy, dp.edges.size(), dp_ms);
  if (keep_network) {
    out.paths.push_back({"SASP", base.nodes});
    out.paths.push_back({"DP-SMER", dp.nodes});
  }
  for (double eps : options.epsilons) {
    t0 = std::chrono::steady_clock::now();
    RouteResult r = epsilon_smer(q, net.source, net.target, eps);
    const double ms = elapsed_ms(t0);
    annotate_route(net.params, net.graph, net.links, pi, r);
    row(epsilon_label(eps), r.energy, base.energy, r.edges.size(), ms);
    if (keep_network) out.paths.push_back({epsilon_label(eps), r.nodes});
  }
  if (keep_network) out.net = net;
  return out;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kHeatmap: return "heatmap";
    case ExperimentKind::kAllocation: return "allocation";
    case ExperimentKind::kSnapshot: return "snapshot";
    case ExperimentKind::kUniform: return "uniform";
    case ExperimentKind::kSize: return "size";
    case ExperimentKind::kJammers: return "jammers";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::kHeatmap, ExperimentKind::kAllocation, ExperimentKind::kSnapshot,
                 ExperimentKind::kUniform, ExperimentKind::kSize, ExperimentKind::kJammers}) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorKind::kInvalidParameter, "unknown experiment '" + std::string(name) +
                                         "' (expected heatmap, allocation, snapshot, uniform, size or jammers)");
}

double savings_percent(double benchmark, double energy) {
  if (!(benchmark > 0.0)) fail(ErrorKind::kInvalidParameter, "benchmark energy must be positive");
  return 100.0 * (benchmark - energy) / benchmark;
}

ExperimentResult run_experiment(ExperimentKind kind, const ExperimentOptions& options) {
  validate_config(options.network);
  ExperimentResult result;
  if (kind == ExperimentKind::kHeatmap) {
    result.heatmap = link_heatmap(options, 0.001, 101);
    return result;
  }
  const std::vector<Sweep> sweeps = build_sweeps(kind, options.network);
  const auto runs = static_cast<std::size_t>(options.network.runs);
  const std::size_t tasks = sweeps.size() * runs;
  std::vector<RunOutput> outputs(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < tasks; t = next++) {
      const Sweep& sweep = sweeps[t / runs];
      const std::uint64_t seed = options.network.seed + t % runs;
      const bool keep = kind == ExperimentKind::kSnapshot && t == 0;
      try {
        outputs[t] = run_one(sweep, seed, options, keep);
      } catch (const Error& e) {
        outputs[t].error = e.what();
      }
    }
  };
  unsigned n = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Means keyed by (sweep index, algorithm order within a run).
  std::vector<ResultRow> means;
  std::vector<std::size_t> counts;
  for (std::size_t s = 0; s < sweeps.size(); ++s) {
    const std::size_t first_mean = means.size();
    for (std::size_t r = 0; r < runs; ++r) {
      RunOutput& out = outputs[s * runs + r];
      const std::uint64_t seed = options.network.seed + r;
      if (!out.error.empty()) {
        result.warnings.push_back(sweeps[s].experiment + " param " + format_real(sweeps[s].param) + " seed " +
                                  std::to_string(seed) + " failed and is excluded from the means: " + out.error);
        continue;
      }
      if (out.shortfall) {
        result.warnings.push_back(sweeps[s].experiment + " seed " + std::to_string(seed) +
                                  ": some links have fewer jammers than requested");
      }
      for (std::size_t i = 0; i < out.rows.size(); ++i) {
        const ResultRow& row = out.rows[i];
        if (first_mean + i >= means.size()) {
          ResultRow m = row;
          m.seed.reset();
          m.energy = m.savings_pct = m.hops = m.runtime_ms = 0.0;
          means.push_back(m);
          counts.push_back(0);
        }
        ResultRow& m = means[first_mean + i];
        m.energy += row.energy;
        m.savings_pct += row.savings_pct;
        m.hops += row.hops;
        m.runtime_ms += row.runtime_ms;
        ++counts[first_mean + i];
        result.rows.push_back(row);
      }
      if (out.net) {
        result.snapshot = std::move(out.net);
        result.snapshot_paths = std::move(out.paths);
      }
    }
  }
  for (std::size_t i = 0; i < means.size(); ++i) {
    const double c = static_cast<double>(counts[i]);
    means[i].energy /= c;
    means[i].savings_pct /= c;
    means[i].hops /= c;
    means[i].runtime_ms /= c;
    result.rows.push_back(means[i]);
  }
  return result;
}

HeatmapGrid link_heatmap(const ExperimentOptions& options, double pi, std::size_t resolution) {
  if (resolution < 2) fail(ErrorKind::kInvalidParameter, "heatmap needs at least 2 samples per side");
  const NetworkConfig& config = options.network;
  std::mt19937_64 rng = make_rng(config.seed, 1);
  const std::vector<Point> nodes = place_nodes(config, rng);
  const double side = config.side_length;
  const Point centre{side / 2.0, side / 2.0};
  auto nearest = [&](const Point& p, auto&& accept) {
    std::size_t best = nodes.size();
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (!accept(i)) continue;
      if (best == nodes.size() || distance(nodes[i], p) < distance(nodes[best], p)) best = i;
    }
    if (best == nodes.size()) fail(ErrorKind::kDegenerateGeometry, "no node fits the heatmap link");
    return best;
  };
  const std::size_t s = nearest(centre, [](std::size_t) { return true; });
  const std::size_t d = nearest(nodes[s], [&](std::size_t i) { return distance(nodes[i], nodes[s]) >= 0.5; });

  const ChannelParams params(config.channel);
  HeatmapGrid grid;
  grid.side = side;
  grid.resolution = resolution;
  grid.source = nodes[s];
  grid.dest = nodes[d];
  for (NodeId j : assign_jammers(nodes, static_cast<NodeId>(s), static_cast<NodeId>(d), config.jammer_count)) {
    grid.jammers.push_back(nodes[static_cast<std::size_t>(j)]);
  }
  LinkSpec link;
  link.source_id = static_cast<NodeId>(s);
  link.source = grid.source;
  link.dest_id = static_cast<NodeId>(d);
  link.dest = grid.dest;
  link.jammers = grid.jammers;
  link.eaves.push_back({});
  const double step = side / static_cast<double>(resolution - 1);
  grid.energy.reserve(resolution * resolution);
  for (std::size_t iy = 0; iy < resolution; ++iy) {
    for (std::size_t ix = 0; ix < resolution; ++ix) {
      link.eaves[0].position = {static_cast<double>(ix) * step, static_cast<double>(iy) * step};
      double energy = std::numeric_limits<double>::quiet_NaN();
      try {
        energy = link_cost(params, link, pi).total;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::kDegenerateGeometry) throw;
      }
      grid.energy.push_back(energy);
    }
  }
  return grid;
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.experiment << ',' << (r.seed ? std::to_string(*r.seed) : std::string("mean")) << ','
        << format_real(r.alpha) << ',' << format_real(r.param) << ',' << r.algorithm << ',' << format_real(r.energy)
        << ',' << format_real(r.savings_pct) << ',' << format_real(r.hops) << ',' << format_real(r.runtime_ms)
        << '\n';
  }
}

void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid) {
  out << "x,y,energy\n";
  const double step = grid.side / static_cast<double>(grid.resolution - 1);
  for (std::size_t iy = 0; iy < grid.resolution; ++iy) {
    for (std::size_t ix = 0; ix < grid.resolution; ++ix) {
      out << format_real(static_cast<double>(ix) * step) << ',' << format_real(static_cast<double>(iy) * step) << ','
          << format_real(grid.energy[iy * grid.resolution + ix]) << '\n';
    }
  }
}

}  // namespace secroute
