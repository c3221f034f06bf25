#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "secroute/network.hpp"

namespace secroute {

// Everything the command line can set. Keys in the config file match the
// long flag names with '-' replaced by '_'.
struct Settings {
  NetworkConfig network;
  std::vector<double> epsilons{0.1, 1.0};  // route uses the first
  double quantum = 0.0;                    // 0 = per-graph default
  std::string algorithm = "dp";
  std::string kind = "snapshot";
  std::string out = "out";
  bool timing = false;
  unsigned threads = 0;
  std::uint64_t trials = 100000;
};

/// Every key accepted by apply_setting, in dump order.
const std::vector<std::string_view>& setting_keys();

/// Throws kInvalidParameter for unknown keys and kParse for malformed values.
void apply_setting(Settings& settings, std::string_view key, std::string_view value);

/// Flat `key = value` lines; `#` starts a comment.
void read_config(std::istream& in, Settings& settings);
void read_config_file(const std::filesystem::path& path, Settings& settings);

/// One line per key, reals with 17 significant digits so reading the dump
/// back reproduces the settings exactly.
std::string dump_config(const Settings& settings);

}  // namespace secroute
