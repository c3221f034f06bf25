#pragma once

#include <limits>

namespace secroute {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

// Raw physical constants as read from a config file or the command line.
struct ChannelSettings {
  double alpha = 4.0;    // path-loss exponent
  double n0 = 1.0;       // receiver noise power
  double gamma_d = 0.8;  // SINR threshold at the legitimate receiver
  double gamma_e = 0.6;  // SINR threshold at which an eavesdropper captures
  double rho = 0.1;      // per-link outage probability
  double p_max = std::numeric_limits<double>::infinity();
};

// Validated channel constants with the truncated-inversion constant k_rho
// computed once at construction.
class ChannelParams {
 public:
  ChannelParams() : ChannelParams(ChannelSettings{}) {}
  explicit ChannelParams(const ChannelSettings& settings);

  double alpha() const { return s_.alpha; }
  double n0() const { return s_.n0; }
  double gamma_d() const { return s_.gamma_d; }
  double gamma_e() const { return s_.gamma_e; }
  double rho() const { return s_.rho; }
  double p_max() const { return s_.p_max; }
  double k_rho() const { return k_rho_; }
  const ChannelSettings& settings() const { return s_; }

  ChannelParams with_p_max(double p_max) const;
  ChannelParams with_alpha(double alpha) const;

 private:
  ChannelSettings s_;
  double k_rho_;
};

/// Mean-power constant of truncated channel inversion:
/// (1/(1-rho)) * integral_{tau}^{inf} e^{-x}/x dx with tau = -ln(1-rho).
/// Throws kInvalidParameter unless 0 < rho < 1.
double k_rho(double rho);

/// Average source power needed to hold the receiver at gamma_d over a link of
/// length d: gamma_d * k_rho * d^alpha.
double source_power(const ChannelParams& params, double d);

}  // namespace secroute
