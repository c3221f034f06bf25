#include "secroute/pathcost.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "secroute/error.hpp"

namespace secroute {

namespace {

void check_budget(double pi) {
  if (!(pi > 0.0 && pi < 1.0)) {
    fail(ErrorKind::kInvalidParameter, "end-to-end eavesdropping budget must lie in (0, 1)");
  }
}

std::vector<CostTerms> all_terms(const ChannelParams& params, const PathSpec& path) {
  validate_path(path);
  std::vector<CostTerms> terms;
  terms.reserve(path.links.size());
  for (const auto& link : path.links) terms.push_back(cost_terms(params, link));
  return terms;
}

}  // namespace

void validate_path(const PathSpec& path) {
  if (path.links.empty()) fail(ErrorKind::kInvalidParameter, "path has no links");
  for (std::size_t k = 1; k < path.links.size(); ++k) {
    const auto& prev = path.links[k - 1];
    const auto& next = path.links[k];
    if (prev.dest_id != next.source_id || !(prev.dest == next.source)) {
      fail(ErrorKind::kInvalidParameter, "links " + std::to_string(k - 1) + " and " + std::to_string(k) +
                                             " do not share an endpoint");
    }
  }
}

SecrecyAllocation allocate_secrecy(std::span<const double> x, double pi) {
  check_budget(pi);
  SecrecyAllocation a;
  a.pi_per_link.assign(x.size(), 0.0);
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (!(sum > 0.0)) {
    a.slack = true;
    return a;
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    a.pi_per_link[k] = x[k] * pi / sum;
    a.large_share = a.large_share || a.pi_per_link[k] > 0.2;
  }
  return a;
}

SecrecyAllocation allocate_secrecy(const ChannelParams& params, const PathSpec& path, double pi) {
  const auto terms = all_terms(params, path);
  std::vector<double> x;
  for (const auto& t : terms) x.push_back(t.x);
  return allocate_secrecy(x, pi);
}

PathJamming jam_power_on_path(std::span<const double> x, std::span<const double> y, double pi) {
  check_budget(pi);
  if (x.size() != y.size()) fail(ErrorKind::kInvalidParameter, "x and y lengths differ");
  const double sum = std::accumulate(x.begin(), x.end(), 0.0);
  PathJamming j;
  j.power.reserve(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    // A risk-free link needs no jamming at all.
    double p = x[k] > 0.0 ? x[k] * sum / pi - y[k] : 0.0;
    if (p < 0.0) {
      j.negative = true;
      p = 0.0;
    }
    j.power.push_back(p);
  }
  return j;
}

PathJamming jam_power_on_path(const ChannelParams& params, const PathSpec& path, double pi) {
  const auto terms = all_terms(params, path);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& t : terms) {
    x.push_back(t.x);
    y.push_back(t.y);
  }
  return jam_power_on_path(x, y, pi);
}

C1C2 c1_c2_from_terms(const CostTerms& terms, double pi) {
  if (!(pi > 0.0)) fail(ErrorKind::kInvalidParameter, "eavesdropping budget must be positive");
  return C1C2{terms.p_s - terms.y, terms.x / std::sqrt(pi)};
}

C1C2 link_c1_c2(const ChannelParams& params, const LinkSpec& link, double pi) {
  return c1_c2_from_terms(cost_terms(params, link), pi);
}

PathCostBreakdown path_cost(const ChannelParams& params, const PathSpec& path, double pi) {
  check_budget(pi);
  const auto terms = all_terms(params, path);
  PathCostBreakdown b;
  double sum_c1 = 0.0;
  double sum_c2 = 0.0;
  for (const auto& t : terms) {
    const C1C2 c = c1_c2_from_terms(t, pi);
    b.c1_per_link.push_back(c.c1);
    b.c2_per_link.push_back(c.c2);
    sum_c1 += c.c1;
    sum_c2 += c.c2;
  }
  b.total = sum_c1 + sum_c2 * sum_c2;
  return b;
}

PathEnergy path_energy_direct(const ChannelParams& params, const PathSpec& path, double pi) {
  const auto terms = all_terms(params, path);
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& t : terms) {
    x.push_back(t.x);
    y.push_back(t.y);
  }
  const PathJamming jam = jam_power_on_path(x, y, pi);
  PathEnergy e;
  e.clamped = jam.negative;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    e.source.push_back(terms[k].p_s);
    e.jamming.push_back(jam.power[k]);
    e.total += terms[k].p_s + jam.power[k];
  }
  return e;
}

double path_energy_for(const ChannelParams& params, const PathSpec& path, std::span<const double> pi_per_link) {
  validate_path(path);
  if (pi_per_link.size() != path.links.size()) {
    fail(ErrorKind::kInvalidParameter, "need one budget share per link");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < path.links.size(); ++k) total += link_cost(params, path.links[k], pi_per_link[k]).total;
  return total;
}

}  // namespace secroute
