#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "secroute/channel.hpp"

namespace secroute {

using NodeId = std::int32_t;

// A potential eavesdropping position and the probability that an eavesdropper
// actually sits there.
struct EaveLocation {
  Point position;
  double prob = 1.0;
};

// One directed wireless hop together with the eavesdropping locations it must
// be protected against and the trusted nodes that jam on its behalf.
struct LinkSpec {
  NodeId source_id = 0;
  Point source;
  NodeId dest_id = 1;
  Point dest;
  std::vector<EaveLocation> eaves;
  std::vector<Point> jammers;
};

// Per-link quantities that feed the routing metric.
struct CostTerms {
  double p_s = 0.0;          // average source power
  std::vector<double> phi;   // jamming efficiency per eavesdropping location
  double x = 0.0;
  double y = 0.0;
  bool no_risk = false;      // every location has probability zero
};

/// Jamming efficiency of the link's jammer set against location i:
/// (gamma_e / (gamma_d k_rho)) (d_SE / d_SD)^alpha sum_j d_JE^-alpha.
double phi_term(const ChannelParams& params, const LinkSpec& link, std::size_t i);

CostTerms cost_terms(const ChannelParams& params, const LinkSpec& link);

struct XYTerms {
  double x = 0.0;
  double y = 0.0;
  bool no_risk = false;
};

XYTerms xy_terms(const ChannelParams& params, const LinkSpec& link);
XYTerms xy_from_phi(std::span<const double> phi, std::span<const double> probs);

// Single eavesdropping location with probability one.
double jam_power_single(const ChannelParams& params, const LinkSpec& link, double pi_k);
double eaves_prob_single(const ChannelParams& params, const LinkSpec& link, double p_j);

struct LocationJamming {
  std::vector<double> per_location;  // jamming power while sending the message aimed at E_i
  std::vector<double> capture;       // 1 / (1 + phi_i P_J(i))
  double average = 0.0;              // mean of per_location
  bool slack = false;                // pi_k >= sum p(E_i): no jamming needed
  bool clamped = false;              // some location was dropped from the active set
};

/// Minimum total jamming power subject to sum_i p_i / (1 + phi_i P_i) = pi_k,
/// P_i >= 0. Locations whose unconstrained optimum is negative are clamped to
/// zero and the multiplier is re-solved over the remaining ones.
LocationJamming allocate_location_jamming(std::span<const double> phi, std::span<const double> probs,
                                          double pi_k);

LocationJamming jam_power_multi(const ChannelParams& params, const LinkSpec& link, double pi_k);

struct LinkCost {
  double source = 0.0;
  double jamming = 0.0;
  double total = 0.0;
  bool slack = false;
  bool clamped = false;
  bool exceeds_p_max = false;  // a single jamming transmission is above p_max
};

/// Source plus average jamming power. Throws kInfeasible when the source power
/// alone exceeds p_max.
LinkCost link_cost(const ChannelParams& params, const LinkSpec& link, double pi_k);

}  // namespace secroute
