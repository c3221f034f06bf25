#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secroute/network.hpp"
#include "secroute/routing.hpp"

namespace secroute {

enum class ExperimentKind { kHeatmap, kAllocation, kSnapshot, kUniform, kSize, kJammers };

std::string_view to_string(ExperimentKind kind);
/// Throws kInvalidParameter for unknown names.
ExperimentKind parse_experiment_kind(std::string_view name);

struct ExperimentOptions {
  NetworkConfig network;
  double quantum = 0.0;  // 0 selects the default quantum per graph
  std::vector<double> epsilons{0.1, 1.0};
  bool timing = false;   // otherwise runtime_ms is written as 0 so output is reproducible
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ResultRow {
  std::string experiment;
  std::optional<std::uint64_t> seed;  // empty for averages over seeds
  double alpha = 0.0;
  double param = 0.0;
  std::string algorithm;
  double energy = 0.0;
  double savings_pct = 0.0;
  double hops = 0.0;
  double runtime_ms = 0.0;
};

struct HeatmapGrid {
  double side = 0.0;
  std::size_t resolution = 0;  // samples per side
  Point source;
  Point dest;
  std::vector<Point> jammers;
  std::vector<double> energy;  // row-major from y = 0; NaN where the geometry is degenerate
};

// A route drawn on the snapshot figure.
struct DrawnPath {
  std::string label;
  std::vector<NodeId> nodes;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> warnings;
  std::optional<HeatmapGrid> heatmap;
  std::optional<NetworkInstance> snapshot;
  std::vector<DrawnPath> snapshot_paths;
};

/// 100 (benchmark - energy) / benchmark.
double savings_percent(double benchmark, double energy);

/// Seeds config.seed .. config.seed + runs - 1; runs execute in parallel and
/// rows come back in (experiment, param, seed, algorithm) order, followed by
/// the per-(experiment, param, algorithm) means over the runs that succeeded.
ExperimentResult run_experiment(ExperimentKind kind, const ExperimentOptions& options);

/// Link cost as the single eavesdropper moves over a resolution x resolution
/// grid. The link joins the node nearest the centre of the square to its
/// closest neighbour at least half a unit away.
HeatmapGrid link_heatmap(const ExperimentOptions& options, double pi, std::size_t resolution);

inline constexpr std::string_view kCsvHeader = "experiment,seed,alpha,param,algorithm,energy,savings_pct,hops,runtime_ms";

/// Reals with 9 significant digits.
std::string format_real(double value);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_heatmap_csv(std::ostream& out, const HeatmapGrid& grid);

}  // namespace secroute
