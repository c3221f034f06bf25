#include "secroute/linkcost.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "secroute/error.hpp"

namespace secroute {

namespace {

void check_endpoints(const LinkSpec& link) {
  if (link.source_id == link.dest_id) {
    fail(ErrorKind::kInvalidGeometry, "link source and destination are the same node");
  }
  if (!(distance(link.source, link.dest) > 0.0)) {
    fail(ErrorKind::kInvalidGeometry, "link endpoints are co-located");
  }
}

void check_location(const LinkSpec& link, std::size_t i) {
  if (i >= link.eaves.size()) {
    fail(ErrorKind::kInvalidParameter, "eavesdropping location index " + std::to_string(i) + " out of range");
  }
  if (link.jammers.empty()) {
    fail(ErrorKind::kInvalidParameter, "link has no jammers");
  }
  const double p = link.eaves[i].prob;
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorKind::kInvalidParameter, "eavesdropping probability outside [0, 1]");
  }
}

double checked_pi(double pi_k) {
  if (!(pi_k > 0.0)) fail(ErrorKind::kInfeasible, "eavesdropping probability must be positive");
  if (!(pi_k <= 1.0)) fail(ErrorKind::kInvalidParameter, "eavesdropping probability above one");
  return pi_k;
}

std::vector<double> location_probs(const LinkSpec& link) {
  std::vector<double> probs;
  probs.reserve(link.eaves.size());
  for (const auto& e : link.eaves) probs.push_back(e.prob);
  return probs;
}

std::vector<double> all_phi(const ChannelParams& params, const LinkSpec& link) {
  std::vector<double> phi;
  phi.reserve(link.eaves.size());
  for (std::size_t i = 0; i < link.eaves.size(); ++i) phi.push_back(phi_term(params, link, i));
  return phi;
}

const LinkSpec& require_single(const LinkSpec& link) {
  if (link.eaves.size() != 1 || link.eaves[0].prob != 1.0) {
    fail(ErrorKind::kInvalidParameter, "single-eavesdropper formula needs exactly one location with probability 1");
  }
  return link;
}

}  // namespace

double phi_term(const ChannelParams& params, const LinkSpec& link, std::size_t i) {
  check_endpoints(link);
  check_location(link, i);
  const Point& e = link.eaves[i].position;
  const double d_se = distance(link.source, e);
  if (!(d_se > 0.0)) {
    fail(ErrorKind::kDegenerateGeometry, "eavesdropping location coincides with the link source");
  }
  double jam_sum = 0.0;
  for (const Point& j : link.jammers) {
    const double d_je = distance(j, e);
    if (!(d_je > 0.0)) {
      fail(ErrorKind::kDegenerateGeometry, "eavesdropping location coincides with a jammer");
    }
    jam_sum += std::pow(d_je, -params.alpha());
  }
  const double d_sd = distance(link.source, link.dest);
  return params.gamma_e() / (params.gamma_d() * params.k_rho()) * std::pow(d_se / d_sd, params.alpha()) *
         jam_sum;
}

XYTerms xy_from_phi(std::span<const double> phi, std::span<const double> probs) {
  if (phi.empty() || phi.size() != probs.size()) {
    fail(ErrorKind::kInvalidParameter, "need one probability per eavesdropping location");
  }
  const double n = static_cast<double>(phi.size());
  double sx = 0.0;
  double sy = 0.0;
  bool any_risk = false;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    sx += std::sqrt(probs[i] / phi[i]);
    sy += 1.0 / phi[i];
    any_risk = any_risk || probs[i] > 0.0;
  }
  return XYTerms{sx / std::sqrt(n), sy / n, !any_risk};
}

XYTerms xy_terms(const ChannelParams& params, const LinkSpec& link) {
  if (link.eaves.empty()) fail(ErrorKind::kInvalidParameter, "link has no eavesdropping locations");
  const auto phi = all_phi(params, link);
  const auto probs = location_probs(link);
  return xy_from_phi(phi, probs);
}

CostTerms cost_terms(const ChannelParams& params, const LinkSpec& link) {
  if (link.eaves.empty()) fail(ErrorKind::kInvalidParameter, "link has no eavesdropping locations");
  CostTerms t;
  t.p_s = source_power(params, distance(link.source, link.dest));
  t.phi = all_phi(params, link);
  const auto probs = location_probs(link);
  const XYTerms xy = xy_from_phi(t.phi, probs);
  t.x = xy.x;
  t.y = xy.y;
  t.no_risk = xy.no_risk;
  return t;
}

double jam_power_single(const ChannelParams& params, const LinkSpec& link, double pi_k) {
  require_single(link);
  checked_pi(pi_k);
  return (1.0 / pi_k - 1.0) / phi_term(params, link, 0);
}

double eaves_prob_single(const ChannelParams& params, const LinkSpec& link, double p_j) {
  require_single(link);
  if (!(p_j >= 0.0)) fail(ErrorKind::kInvalidParameter, "jamming power must be non-negative");
  return 1.0 / (1.0 + phi_term(params, link, 0) * p_j);
}

LocationJamming allocate_location_jamming(std::span<const double> phi, std::span<const double> probs,
                                          double pi_k) {
  if (phi.empty() || phi.size() != probs.size()) {
    fail(ErrorKind::kInvalidParameter, "need one probability per eavesdropping location");
  }
  checked_pi(pi_k);
  const std::size_t n = phi.size();
  LocationJamming out;
  out.per_location.assign(n, 0.0);
  out.capture.assign(n, 1.0);

  const double total_prob = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (pi_k >= total_prob) {
    out.slack = true;
    return out;
  }

  // Active-set iteration. Dropping a location raises the water level
  // pi_active / S_active, so a dropped location never needs to come back.
  std::vector<bool> active(n, true);
  for (;;) {
    double pi_active = pi_k;
    double s_active = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (active[i]) {
        s_active += std::sqrt(probs[i] / phi[i]);
      } else {
        pi_active -= probs[i];
      }
    }
    bool dropped = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      const double p = std::sqrt(probs[i] / phi[i]) * s_active / pi_active - 1.0 / phi[i];
      if (p < 0.0) {
        active[i] = false;
        dropped = true;
      } else {
        out.per_location[i] = p;
      }
    }
    if (!dropped) break;
    out.clamped = true;
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) out.per_location[i] = 0.0;
    out.capture[i] = 1.0 / (1.0 + phi[i] * out.per_location[i]);
    sum += out.per_location[i];
  }
  out.average = sum / static_cast<double>(n);
  return out;
}

LocationJamming jam_power_multi(const ChannelParams& params, const LinkSpec& link, double pi_k) {
  if (link.eaves.empty()) fail(ErrorKind::kInvalidParameter, "link has no eavesdropping locations");
  const auto phi = all_phi(params, link);
  const auto probs = location_probs(link);
  return allocate_location_jamming(phi, probs, pi_k);
}

LinkCost link_cost(const ChannelParams& params, const LinkSpec& link, double pi_k) {
  LinkCost c;
  c.source = source_power(params, distance(link.source, link.dest));
  if (c.source > params.p_max()) {
    fail(ErrorKind::kInfeasible, "source power exceeds p_max on link " + std::to_string(link.source_id) + "->" +
                                     std::to_string(link.dest_id));
  }
  const LocationJamming jam = jam_power_multi(params, link, pi_k);
  c.jamming = jam.average;
  c.total = c.source + c.jamming;
  c.slack = jam.slack;
  c.clamped = jam.clamped;
  for (double p : jam.per_location) c.exceeds_p_max = c.exceeds_p_max || p > params.p_max();
  return c;
}

}  // namespace secroute
