#include "secroute/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "secroute/error.hpp"

namespace secroute {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* expected) {
  fail(ErrorKind::kParse, "invalid value '" + std::string(value) + "' for " + std::string(key) + ": expected " +
                              expected);
}

double parse_real(std::string_view key, std::string_view value) {
  value = trim(value);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size() || !std::isfinite(v)) {
    bad_value(key, value, "a finite number");
  }
  return v;
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  value = trim(value);
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size()) bad_value(key, value, "a non-negative integer");
  return v;
}

std::int32_t parse_int32(std::string_view key, std::string_view value) {
  const std::uint64_t v = parse_count(key, value);
  if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) bad_value(key, value, "a smaller integer");
  return static_cast<std::int32_t>(v);
}

bool parse_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  bad_value(key, value, "true or false");
}

// `auto` maps to `fallback`.
double parse_real_or_auto(std::string_view key, std::string_view value, double fallback) {
  return trim(value) == "auto" ? fallback : parse_real(key, value);
}

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

const std::vector<std::string_view>& setting_keys() {
  static const std::vector<std::string_view> keys{
      "side",  "sigma", "sigma_e", "placement", "assignment", "eave_radius", "jammers", "pi",
      "alpha", "rho",   "gamma_d", "gamma_e",   "n0",         "p_max",       "seed",    "runs",
      "epsilon", "quantum", "algorithm", "kind", "out", "timing", "threads", "trials"};
  return keys;
}

void apply_setting(Settings& s, std::string_view key, std::string_view value) {
  NetworkConfig& n = s.network;
  ChannelSettings& c = n.channel;
  const std::string_view v = trim(value);
  if (key == "side") {
    n.side_length = parse_real(key, v);
  } else if (key == "sigma") {
    n.node_density = parse_real(key, v);
  } else if (key == "sigma_e") {
    n.eave_density = parse_real(key, v);
  } else if (key == "placement") {
    if (v == "uniform") n.placement = Placement::kUniform;
    else if (v == "diagonal") n.placement = Placement::kDiagonal;
    else bad_value(key, v, "uniform or diagonal");
  } else if (key == "assignment") {
    if (v == "nearest") n.assignment = EaveAssignment::kNearest;
    else if (v == "radius") n.assignment = EaveAssignment::kRadius;
    else bad_value(key, v, "nearest or radius");
  } else if (key == "eave_radius") {
    n.eave_radius = parse_real(key, v);
  } else if (key == "jammers") {
    n.jammer_count = parse_int32(key, v);
  } else if (key == "pi") {
    n.pi = parse_real(key, v);
  } else if (key == "alpha") {
    c.alpha = parse_real(key, v);
  } else if (key == "rho") {
    c.rho = parse_real(key, v);
  } else if (key == "gamma_d") {
    c.gamma_d = parse_real(key, v);
  } else if (key == "gamma_e") {
    c.gamma_e = parse_real(key, v);
  } else if (key == "n0") {
    c.n0 = parse_real(key, v);
  } else if (key == "p_max") {
    c.p_max = parse_real_or_auto(key, v, std::numeric_limits<double>::infinity());
  } else if (key == "seed") {
    n.seed = parse_count(key, v);
  } else if (key == "runs") {
    n.runs = parse_int32(key, v);
  } else if (key == "epsilon") {
    std::vector<double> eps;
    std::string_view rest = v;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      eps.push_back(parse_real(key, rest.substr(0, comma)));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    if (eps.empty()) bad_value(key, v, "one or more comma-separated numbers");
    s.epsilons = eps;
  } else if (key == "quantum") {
    s.quantum = parse_real_or_auto(key, v, 0.0);
  } else if (key == "algorithm") {
    if (v != "dp" && v != "eps" && v != "sasp") bad_value(key, v, "dp, eps or sasp");
    s.algorithm = std::string(v);
  } else if (key == "kind") {
    s.kind = std::string(v);
  } else if (key == "out") {
    if (v.empty()) bad_value(key, v, "a directory");
    s.out = std::string(v);
  } else if (key == "timing") {
    s.timing = parse_bool(key, v);
  } else if (key == "threads") {
    s.threads = static_cast<unsigned>(parse_int32(key, v));
  } else if (key == "trials") {
    s.trials = parse_count(key, v);
  } else {
    fail(ErrorKind::kInvalidParameter, "unknown setting '" + std::string(key) + "'");
  }
}

void read_config(std::istream& in, Settings& settings) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::kParse, "config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string_view key = trim(text.substr(0, eq));
    try {
      apply_setting(settings, key, text.substr(eq + 1));
    } catch (const Error& e) {
      fail(e.kind(), "config line " + std::to_string(number) + ": " + e.what());
    }
  }
}

void read_config_file(const std::filesystem::path& path, Settings& settings) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::kIo, "cannot open config file '" + path.string() + "'");
  read_config(in, settings);
}

std::string dump_config(const Settings& s) {
  const NetworkConfig& n = s.network;
  const ChannelSettings& c = n.channel;
  std::ostringstream out;
  out << "side = " << real(n.side_length) << '\n'
      << "sigma = " << real(n.node_density) << '\n'
      << "sigma_e = " << real(n.eave_density) << '\n'
      << "placement = " << (n.placement == Placement::kUniform ? "uniform" : "diagonal") << '\n'
      << "assignment = " << (n.assignment == EaveAssignment::kNearest ? "nearest" : "radius") << '\n'
      << "eave_radius = " << real(n.eave_radius) << '\n'
      << "jammers = " << n.jammer_count << '\n'
      << "pi = " << real(n.pi) << '\n'
      << "alpha = " << real(c.alpha) << '\n'
      << "rho = " << real(c.rho) << '\n'
      << "gamma_d = " << real(c.gamma_d) << '\n'
      << "gamma_e = " << real(c.gamma_e) << '\n'
      << "n0 = " << real(c.n0) << '\n'
      << "p_max = " << (std::isfinite(c.p_max) ? real(c.p_max) : "auto") << '\n'
      << "seed = " << n.seed << '\n'
      << "runs = " << n.runs << '\n'
      << "epsilon = ";
  for (std::size_t i = 0; i < s.epsilons.size(); ++i) out << (i ? "," : "") << real(s.epsilons[i]);
  out << '\n'
      << "quantum = " << (s.quantum > 0.0 ? real(s.quantum) : "auto") << '\n'
      << "algorithm = " << s.algorithm << '\n'
      << "kind = " << s.kind << '\n'
      << "out = " << s.out << '\n'
      << "timing = " << (s.timing ? "true" : "false") << '\n'
      << "threads = " << s.threads << '\n'
      << "trials = " << s.trials << '\n';
  return out.str();
}

}  // namespace secroute
