#include "secroute/coding.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "secroute/error.hpp"

namespace secroute {

namespace {

constexpr std::uint64_t kChunk = 4096;

Gf2Vector reduce(std::span<const Gf2Vector> basis, Gf2Vector v) {
  while (v != 0) {
    const int lead = std::bit_width(v) - 1;
    if (basis[static_cast<std::size_t>(lead)] == 0) return v;
    v ^= basis[static_cast<std::size_t>(lead)];
  }
  return 0;
}

Gf2Vector low_mask(std::size_t count) { return count == 64 ? ~Gf2Vector{0} : (Gf2Vector{1} << count) - 1; }

std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::size_t gf2_rank(std::span<const Gf2Vector> vectors) {
  Gf2Vector basis[kMaxMessages] = {};
  std::size_t rank = 0;
  for (Gf2Vector v : vectors) {
    const Gf2Vector r = reduce(basis, v);
    if (r != 0) {
      basis[std::bit_width(r) - 1] = r;
      ++rank;
    }
  }
  return rank;
}

bool decodable(std::span<const Gf2Vector> received, std::size_t message_count) {
  return gf2_rank(received) == message_count;
}

CodingBlock::CodingBlock(std::size_t message_count) : count_(message_count), basis_(kMaxMessages, 0) {
  if (message_count == 0 || message_count > kMaxMessages) {
    fail(ErrorKind::kInvalidParameter, "a block holds between 1 and 64 messages");
  }
}

Gf2Vector CodingBlock::encode_next(std::mt19937_64& rng) {
  if (complete()) fail(ErrorKind::kExhausted, "every independent coded message of the block was sent");
  const Gf2Vector mask = low_mask(count_);
  for (;;) {
    const Gf2Vector v = rng() & mask;
    if (v == 0) continue;
    const Gf2Vector r = reduce(basis_, v);
    if (r == 0) continue;
    basis_[static_cast<std::size_t>(std::bit_width(r) - 1)] = r;
    sent_.push_back(v);
    return v;
  }
}

CaptureMatrix capture_matrix(std::span<const double> phi, std::span<const double> power) {
  if (phi.size() != power.size()) fail(ErrorKind::kInvalidParameter, "one jamming power per location is required");
  CaptureMatrix m;
  m.size = phi.size();
  m.entries.resize(m.size * m.size);
  for (std::size_t i = 0; i < m.size; ++i) {
    for (std::size_t j = 0; j < m.size; ++j) m.entries[i * m.size + j] = 1.0 / (1.0 + phi[i] * power[j]);
  }
  return m;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::vector<std::uint64_t> simulate_decodes(const CaptureMatrix& capture, std::uint64_t trials, std::uint64_t seed,
                                            unsigned threads) {
  const std::size_t m = capture.size;
  if (m == 0 || m > kMaxMessages) fail(ErrorKind::kInvalidParameter, "capture matrix must have 1 to 64 locations");
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> per_chunk(chunks, std::vector<std::uint64_t>(m, 0));
  std::atomic<std::uint64_t> next{0};

  auto worker = [&] {
    std::vector<Gf2Vector> heard;
    heard.reserve(m);
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      std::mt19937_64 rng = chunk_rng(seed, c);
      std::uniform_real_distribution<double> coin(0.0, 1.0);
      const std::uint64_t end = std::min(trials, (c + 1) * kChunk);
      for (std::uint64_t t = c * kChunk; t < end; ++t) {
        CodingBlock block(m);
        for (std::size_t j = 0; j < m; ++j) block.encode_next(rng);
        for (std::size_t i = 0; i < m; ++i) {
          heard.clear();
          for (std::size_t j = 0; j < m; ++j) {
            if (coin(rng) < capture.at(i, j)) heard.push_back(block.sent()[j]);
          }
          if (decodable(heard, m)) ++per_chunk[c][i];
        }
      }
    }
  };
  unsigned n = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  n = static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<std::uint64_t> total(m, 0);
  for (const auto& c : per_chunk) {
    for (std::size_t i = 0; i < m; ++i) total[i] += c[i];
  }
  return total;
}

SecrecySimulation simulate_link_secrecy(const ChannelParams& params, const LinkSpec& link, double pi_k,
                                        std::uint64_t trials, std::uint64_t seed, unsigned threads) {
  if (trials == 0) fail(ErrorKind::kInvalidParameter, "at least one trial is required");
  const CostTerms terms = cost_terms(params, link);
  const LocationJamming jam = jam_power_multi(params, link, pi_k);
  const CaptureMatrix capture = capture_matrix(terms.phi, jam.per_location);
  const std::vector<std::uint64_t> decodes = simulate_decodes(capture, trials, seed, threads);

  SecrecySimulation sim;
  sim.trials = trials;
  sim.pi_k = pi_k;
  for (const EaveLocation& e : link.eaves) sim.probs.push_back(e.prob);
  for (std::size_t i = 0; i < capture.size; ++i) {
    LocationStats s;
    s.decodes = decodes[i];
    s.rate = static_cast<double>(decodes[i]) / static_cast<double>(trials);
    const WilsonInterval w = wilson_interval(decodes[i], trials);
    s.lower = w.lower;
    s.upper = w.upper;
    s.diagonal = capture.at(i, i);
    s.product = 1.0;
    for (std::size_t j = 0; j < capture.size; ++j) s.product *= capture.at(i, j);
    sim.weighted_rate += sim.probs[i] * s.rate;
    sim.locations.push_back(s);
  }
  return sim;
}

}  // namespace secroute
