#include "secroute/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "secroute/approx.hpp"
#include "secroute/coding.hpp"
#include "secroute/config.hpp"
#include "secroute/error.hpp"
#include "secroute/experiments.hpp"
#include "secroute/graph.hpp"
#include "secroute/routing.hpp"
#include "secroute/svg.hpp"

namespace secroute {

namespace {

namespace fs = std::filesystem;

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

const Flag kFlags[] = {
    {"--alpha", "alpha", "path-loss exponent"},
    {"--pi", "pi", "end-to-end eavesdropping probability"},
    {"--rho", "rho", "per-link outage probability"},
    {"--gamma-d", "gamma_d", "destination SINR threshold"},
    {"--gamma-e", "gamma_e", "eavesdropper SINR threshold"},
    {"--n0", "n0", "noise power"},
    {"--p-max", "p_max", "maximum transmission power, or auto"},
    {"--side", "side", "side length of the square"},
    {"--sigma", "sigma", "node density"},
    {"--sigma-e", "sigma_e", "eavesdropper density"},
    {"--placement", "placement", "uniform or diagonal"},
    {"--assignment", "assignment", "nearest or radius"},
    {"--eave-radius", "eave_radius", "radius for the radius assignment"},
    {"--jammers", "jammers", "jammers per link"},
    {"--epsilon", "epsilon", "approximation factors, comma separated"},
    {"--quantum", "quantum", "c2 quantum, or auto"},
    {"--seed", "seed", "random seed (falls back to SECROUTE_SEED)"},
    {"--runs", "runs", "seeds per experiment point"},
    {"--out", "out", "output directory"},
    {"--algorithm", "algorithm", "dp, eps or sasp"},
    {"--kind", "kind", "experiment: heatmap, allocation, snapshot, uniform, size or jammers"},
    {"--timing", "timing", "record wall time in runtime_ms"},
    {"--threads", "threads", "worker threads, 0 for all cores"},
    {"--trials", "trials", "Monte-Carlo trials per link"},
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter:
    case ErrorKind::kParse:
    case ErrorKind::kIo:
      return 1;
    default:
      return 2;
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::kIo, "cannot write '" + path.string() + "'");
  f << text;
}

fs::path prepare_out(const Settings& s) {
  const fs::path dir(s.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorKind::kIo, "cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

ExperimentOptions experiment_options(const Settings& s) {
  ExperimentOptions o;
  o.network = s.network;
  o.quantum = s.quantum;
  o.epsilons = s.epsilons;
  o.timing = s.timing;
  o.threads = s.threads;
  return o;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "dp") return Algorithm::kDpSmer;
  if (name == "eps") return Algorithm::kEpsSmer;
  if (name == "sasp") return Algorithm::kSasp;
  fail(ErrorKind::kInvalidParameter, "unknown algorithm '" + name + "'");
}

void print_route(std::ostream& out, const RouteResult& r, std::optional<double> energy) {
  out << "algorithm,hops,cost,quantized_cost,budget,energy,path\n";
  out << to_string(r.algorithm) << ',' << r.edges.size() << ',' << format_real(r.cost) << ','
      << format_real(r.quantized_cost) << ',' << r.budget_used << ','
      << (energy ? format_real(*energy) : std::string("nan")) << ',';
  for (std::size_t i = 0; i < r.nodes.size(); ++i) out << (i ? "-" : "") << r.nodes[i];
  out << '\n';
}

RouteResult route_on(const Settings& s, const CostGraph& graph, NodeId source, NodeId target, Algorithm algorithm) {
  const QuantizedGraph q = quantize(graph, s.quantum > 0.0 ? s.quantum : default_quantum(graph));
  if (algorithm == Algorithm::kDpSmer) return dp_smer(q, source, target);
  return epsilon_smer(q, source, target, s.epsilons.front());
}

int cmd_gen(const Settings& s, std::ostream& out) {
  const NetworkInstance net = generate_network(s.network, s.network.seed);
  const fs::path dir = prepare_out(s);
  write_graph_file(dir / "network.graph", net.graph);
  write_file(dir / "network.svg", network_svg(net, s.network.side_length, {}));
  out << "nodes " << net.nodes.size() << " links " << net.links.size() << " p_max " << format_real(net.params.p_max())
      << '\n'
      << (dir / "network.graph").string() << '\n'
      << (dir / "network.svg").string() << '\n';
  return 0;
}

int cmd_route(const Settings& s, const std::string& input, std::optional<NodeId> source, std::optional<NodeId> target,
              std::ostream& out) {
  const Algorithm algorithm = parse_algorithm(s.algorithm);
  if (!input.empty()) {
    if (algorithm == Algorithm::kSasp) {
      fail(ErrorKind::kInvalidParameter, "sasp needs node positions; omit --input to route on a generated network");
    }
    const CostGraph graph = read_graph_file(input);
    const NodeId s0 = source.value_or(0);
    const NodeId t0 = target.value_or(graph.node_count - 1);
    print_route(out, route_on(s, graph, s0, t0, algorithm), std::nullopt);
    return 0;
  }
  const NetworkInstance net = generate_network(s.network, s.network.seed);
  const NodeId s0 = source.value_or(net.source);
  const NodeId t0 = target.value_or(net.target);
  RouteResult r = algorithm == Algorithm::kSasp ? sasp(net.params, net.graph, net.links, s0, t0)
                                                : route_on(s, net.graph, s0, t0, algorithm);
  annotate_route(net.params, net.graph, net.links, s.network.pi, r);
  print_route(out, r, r.energy);
  return 0;
}

int cmd_experiment(const Settings& s, ExperimentKind kind, std::ostream& out, std::ostream& err) {
  const ExperimentResult result = run_experiment(kind, experiment_options(s));
  const fs::path dir = prepare_out(s);
  for (const std::string& w : result.warnings) err << "secroute: warning: " << w << '\n';
  if (result.heatmap) {
    std::ostringstream csv;
    write_heatmap_csv(csv, *result.heatmap);
    write_file(dir / "heatmap.csv", csv.str());
    write_file(dir / "heatmap.svg", heatmap_svg(*result.heatmap));
    out << (dir / "heatmap.csv").string() << '\n' << (dir / "heatmap.svg").string() << '\n';
    return 0;
  }
  std::ostringstream csv;
  write_csv(csv, result.rows);
  const fs::path csv_path = dir / (std::string(to_string(kind)) + ".csv");
  write_file(csv_path, csv.str());
  out << csv_path.string() << '\n';
  if (result.snapshot) {
    const fs::path svg_path = dir / "snapshot.svg";
    write_file(svg_path, network_svg(*result.snapshot, s.network.side_length, result.snapshot_paths));
    out << svg_path.string() << '\n';
  }
  return 0;
}

int cmd_validate_coding(const Settings& s, std::ostream& out, std::ostream& err) {
  const ChannelParams params(s.network.channel);
  std::mt19937_64 rng = make_rng(s.network.seed, 7);
  std::uniform_int_distribution<std::size_t> count(2, 4);
  std::size_t violations = 0;
  out << "link,location,prob,capture,product,rate,lower,upper\n";
  for (std::int32_t k = 0; k < s.network.runs; ++k) {
    const LinkSpec link = random_link(rng, count(rng));
    const SecrecySimulation sim =
        simulate_link_secrecy(params, link, s.network.pi, s.trials, rng(), s.threads);
    for (std::size_t i = 0; i < sim.locations.size(); ++i) {
      const LocationStats& l = sim.locations[i];
      const double sigma = std::sqrt(l.diagonal * (1.0 - l.diagonal) / static_cast<double>(sim.trials));
      if (l.rate > l.diagonal + 3.0 * sigma) ++violations;
      out << k << ',' << i << ',' << format_real(sim.probs[i]) << ',' << format_real(l.diagonal) << ','
          << format_real(l.product) << ',' << format_real(l.rate) << ',' << format_real(l.lower) << ','
          << format_real(l.upper) << '\n';
    }
  }
  err << "secroute: " << violations << " location(s) decoded above capture probability + 3 sigma\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Secure minimum-energy routing with cooperative jamming", "secroute"};
  app.require_subcommand(0, 1);
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> given;
  for (const Flag& f : kFlags) given[f.key] = app.add_option(f.name, values[f.key], f.help);
  std::string config_path;
  app.add_option("--config", config_path, "config file of key = value lines");
  bool dump = false;
  app.add_flag("--dump-config", dump, "print the effective configuration and exit");

  auto* gen = app.add_subcommand("gen", "generate a network and write its graph and picture");
  auto* route = app.add_subcommand("route", "route on a graph file or a generated network");
  std::string input;
  std::int32_t source = -1;
  std::int32_t target = -1;
  route->add_option("--input", input, "graph file");
  auto* source_opt = route->add_option("--source", source, "source node");
  auto* target_opt = route->add_option("--target", target, "target node");
  auto* experiment = app.add_subcommand("experiment", "run an experiment and write CSV and SVG output");
  auto* heatmap = app.add_subcommand("heatmap", "link cost over eavesdropper positions");
  auto* coding = app.add_subcommand("validate-coding", "Monte-Carlo check of the coding secrecy bound");
  for (auto* sub : {gen, route, experiment, heatmap, coding}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  }

  try {
    Settings settings;
    if (const char* env = std::getenv("SECROUTE_SEED"); env != nullptr && *env != '\0') {
      apply_setting(settings, "seed", env);
    }
    if (!config_path.empty()) read_config_file(config_path, settings);
    for (const Flag& f : kFlags) {
      if (given[f.key]->count() > 0) apply_setting(settings, f.key, values[f.key]);
    }
    if (dump) {
      out << dump_config(settings);
      return 0;
    }
    validate_config(settings.network);
    if (gen->parsed()) return cmd_gen(settings, out);
    if (route->parsed()) {
      return cmd_route(settings, input, source_opt->count() ? std::optional<NodeId>(source) : std::nullopt,
                       target_opt->count() ? std::optional<NodeId>(target) : std::nullopt, out);
    }
    if (experiment->parsed()) return cmd_experiment(settings, parse_experiment_kind(settings.kind), out, err);
    if (heatmap->parsed()) return cmd_experiment(settings, ExperimentKind::kHeatmap, out, err);
    if (coding->parsed()) return cmd_validate_coding(settings, out, err);
    err << app.help();
    return 1;
  } catch (const Error& e) {
    err << "secroute: error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
}

}  // namespace secroute
