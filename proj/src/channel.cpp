#include "secroute/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "secroute/error.hpp"

namespace secroute {

namespace {

// e^{-x}/x after the substitution x = e^u, which removes the 1/x singularity.
double substituted_integrand(double u) { return std::exp(-std::exp(u)); }

double simpson(double a, double fa, double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = substituted_integrand(lm);
  const double frm = substituted_integrand(rm);
  const double left = simpson(a, fa, flm, m, fm);
  const double right = simpson(m, fm, frm, b, fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// E1(tau) by quadrature, truncated where the integrand is below 1e-23 and at
// least 30 e-folds past tau.
double exponential_integral_e1(double tau) {
  const double upper = std::max(50.0, tau + 30.0);
  const double a = std::log(tau);
  const double b = std::log(upper);
  const double m = 0.5 * (a + b);
  const double fa = substituted_integrand(a);
  const double fb = substituted_integrand(b);
  const double fm = substituted_integrand(m);
  const double coarse = simpson(a, fa, fm, b, fb);
  // Two passes: the first only sets the scale for a relative tolerance.
  const double rough = adaptive_simpson(a, fa, b, fb, m, fm, coarse, 1e-6 * std::fabs(coarse), 40);
  return adaptive_simpson(a, fa, b, fb, m, fm, coarse, 1e-12 * std::fabs(rough), 60);
}

void validate(const ChannelSettings& s) {
  auto require = [](bool ok, const char* what) {
    if (!ok) fail(ErrorKind::kInvalidParameter, std::string("channel parameter out of range: ") + what);
  };
  require(std::isfinite(s.alpha) && s.alpha >= 2.0 && s.alpha <= 6.0, "alpha must lie in [2, 6]");
  require(s.rho > 0.0 && s.rho < 1.0, "rho must lie in (0, 1)");
  require(s.gamma_d > 0.0 && std::isfinite(s.gamma_d), "gamma_d must be positive");
  require(s.gamma_e > 0.0 && std::isfinite(s.gamma_e), "gamma_e must be positive");
  require(s.n0 > 0.0 && std::isfinite(s.n0), "n0 must be positive");
  require(s.p_max > 0.0, "p_max must be positive");
}

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

ChannelParams::ChannelParams(const ChannelSettings& settings) : s_(settings), k_rho_(0.0) {
  validate(s_);
  k_rho_ = secroute::k_rho(s_.rho);
}

ChannelParams ChannelParams::with_p_max(double p_max) const {
  ChannelSettings s = s_;
  s.p_max = p_max;
  return ChannelParams(s);
}

ChannelParams ChannelParams::with_alpha(double alpha) const {
  ChannelSettings s = s_;
  s.alpha = alpha;
  return ChannelParams(s);
}

double k_rho(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    fail(ErrorKind::kInvalidParameter, "rho must lie in (0, 1), got " + std::to_string(rho));
  }
  const double tau = -std::log1p(-rho);
  return exponential_integral_e1(tau) / (1.0 - rho);
}

double source_power(const ChannelParams& params, double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    fail(ErrorKind::kInvalidGeometry, "link length must be positive, got " + std::to_string(d));
  }
  return params.gamma_d() * params.k_rho() * std::pow(d, params.alpha());
}

}  // namespace secroute
