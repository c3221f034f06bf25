#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "secroute/channel.hpp"
#include "secroute/linkcost.hpp"

namespace secroute {

// Coefficient vectors over GF(2); bit i selects message i. Blocks hold at most
// 64 messages.
using Gf2Vector = std::uint64_t;
inline constexpr std::size_t kMaxMessages = 64;

std::size_t gf2_rank(std::span<const Gf2Vector> vectors);

/// True iff the received vectors span all message_count messages.
bool decodable(std::span<const Gf2Vector> received, std::size_t message_count);

// Tracks what a sender has transmitted for one block of messages.
class CodingBlock {
 public:
  explicit CodingBlock(std::size_t message_count);

  std::size_t message_count() const { return count_; }
  const std::vector<Gf2Vector>& sent() const { return sent_; }
  bool complete() const { return sent_.size() == count_; }

  /// Uniformly random nonzero vector independent of everything sent so far.
  /// Throws kExhausted once the block is complete.
  Gf2Vector encode_next(std::mt19937_64& rng);

 private:
  std::size_t count_;
  std::vector<Gf2Vector> sent_;
  std::vector<Gf2Vector> basis_;  // basis_[b] has leading bit b, or 0
};

// entries[i * size + j]: chance that a listener at location i captures the
// transmission jammed against location j.
struct CaptureMatrix {
  std::size_t size = 0;
  std::vector<double> entries;

  double at(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

/// 1 / (1 + phi_i P_j).
CaptureMatrix capture_matrix(std::span<const double> phi, std::span<const double> power);

struct LocationStats {
  std::uint64_t decodes = 0;
  double rate = 0.0;
  double lower = 0.0;      // Wilson 99% interval
  double upper = 0.0;
  double diagonal = 0.0;   // capture of the transmission aimed at this location
  double product = 0.0;    // chance of capturing every transmission
};

struct SecrecySimulation {
  std::uint64_t trials = 0;
  double pi_k = 0.0;
  std::vector<double> probs;
  std::vector<LocationStats> locations;
  double weighted_rate = 0.0;  // sum_i p_i rate_i
};

struct WilsonInterval {
  double lower = 0.0;
  double upper = 0.0;
};
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 2.5758);

/// Trials run in fixed-size chunks, each with its own generator seeded from
/// (seed, chunk index), so the counts do not depend on `threads`.
std::vector<std::uint64_t> simulate_decodes(const CaptureMatrix& capture, std::uint64_t trials, std::uint64_t seed,
                                            unsigned threads = 0);

/// Jams each location with the allocation from jam_power_multi(pi_k) and
/// counts full decodes at every location.
SecrecySimulation simulate_link_secrecy(const ChannelParams& params, const LinkSpec& link, double pi_k,
                                        std::uint64_t trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace secroute
