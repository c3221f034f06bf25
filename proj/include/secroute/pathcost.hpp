#pragma once

#include <span>
#include <vector>

#include "secroute/channel.hpp"
#include "secroute/linkcost.hpp"

namespace secroute {

// Links of an s->d walk in order; link k+1 starts where link k ends.
struct PathSpec {
  std::vector<LinkSpec> links;
};

void validate_path(const PathSpec& path);

struct SecrecyAllocation {
  std::vector<double> pi_per_link;
  bool slack = false;        // no link carries any risk, the budget is irrelevant
  bool large_share = false;  // some link got more than 0.2, where sum pi_k = pi is a poor fit
};

// Budget shares proportional to x_k.
SecrecyAllocation allocate_secrecy(std::span<const double> x, double pi);
SecrecyAllocation allocate_secrecy(const ChannelParams& params, const PathSpec& path, double pi);

struct PathJamming {
  std::vector<double> power;
  bool negative = false;  // a closed-form value fell below zero and was clamped
};

// P_J^(k) = x_k (sum_i x_i) / pi - y_k.
PathJamming jam_power_on_path(std::span<const double> x, std::span<const double> y, double pi);
PathJamming jam_power_on_path(const ChannelParams& params, const PathSpec& path, double pi);

struct C1C2 {
  double c1 = 0.0;  // P_S - y, may be negative
  double c2 = 0.0;  // x / sqrt(pi)
};

C1C2 c1_c2_from_terms(const CostTerms& terms, double pi);
C1C2 link_c1_c2(const ChannelParams& params, const LinkSpec& link, double pi);

struct PathCostBreakdown {
  std::vector<double> c1_per_link;
  std::vector<double> c2_per_link;
  double total = 0.0;  // sum c1 + (sum c2)^2
};

PathCostBreakdown path_cost(const ChannelParams& params, const PathSpec& path, double pi);

struct PathEnergy {
  std::vector<double> source;
  std::vector<double> jamming;
  double total = 0.0;
  bool clamped = false;
};

// Sum of source and jamming powers under the optimal allocation, summed link
// by link rather than through the closed form.
PathEnergy path_energy_direct(const ChannelParams& params, const PathSpec& path, double pi);

// Energy of a path under an arbitrary per-link budget split, each link
// jammed optimally for its own share.
double path_energy_for(const ChannelParams& params, const PathSpec& path, std::span<const double> pi_per_link);

}  // namespace secroute
