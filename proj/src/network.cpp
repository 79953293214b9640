#include "ia/network.hpp"

#include <stdexcept>
#include <string>

#include "ia/rng.hpp"

namespace ia {

NetworkConfig NetworkConfig::symmetric(int users, int tx, int rx, int streams,
                                       double power) {
  NetworkConfig cfg;
  cfg.user_count = users;
  cfg.tx_antennas.assign(users, tx);
  cfg.rx_antennas.assign(users, rx);
  cfg.streams.assign(users, streams);
  cfg.powers.assign(users, power);
  return cfg;
}

void validate(const NetworkConfig& cfg) {
  const std::size_t k = static_cast<std::size_t>(cfg.user_count);
  if (cfg.user_count < 2) {
    throw std::invalid_argument("network config: at least 2 users required");
  }
  if (cfg.tx_antennas.size() != k || cfg.rx_antennas.size() != k ||
      cfg.streams.size() != k || cfg.powers.size() != k) {
    throw std::invalid_argument(
        "network config: per-user vectors must have length K");
  }
  for (int j = 0; j < cfg.user_count; ++j) {
    const int m = cfg.tx_antennas[j];
    const int n = cfg.rx_antennas[j];
    const int d = cfg.streams[j];
    if (m < 1 || n < 1) {
      throw std::invalid_argument("network config: antenna counts must be >= 1");
    }
    if (d < 1 || d > std::min(m, n)) {
      throw std::invalid_argument(
          "network config: streams must satisfy 1 <= d <= min(M, N) for user " +
          std::to_string(j));
    }
    if (!(cfg.powers[j] > 0.0)) {
      throw std::invalid_argument(
          "network config: powers must be positive for user " +
          std::to_string(j));
    }
  }
}

FeasibilityReport check_feasibility(const NetworkConfig& cfg) {
  validate(cfg);
  FeasibilityReport rep;
  rep.per_user.resize(cfg.user_count);
  for (int j = 0; j < cfg.user_count; ++j) {
    const bool ok = cfg.tx_antennas[j] + cfg.rx_antennas[j] >=
                    (cfg.user_count + 1) * cfg.streams[j];
    rep.per_user[j] = ok;
    rep.all = rep.all && ok;
  }
  return rep;
}

namespace {

ComplexMatrix gaussian_matrix(int rows, int cols, std::uint64_t stream_seed) {
  SplitMix64 gen(stream_seed);
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = gen.complex_gaussian();
    }
  }
  return m;
}

}  // namespace

ChannelSet sample_channels(const NetworkConfig& cfg, std::uint64_t seed) {
  validate(cfg);
  const int k = cfg.user_count;
  ChannelSet ch;
  ch.user_count = k;
  ch.seed = seed;
  ch.blocks.resize(static_cast<std::size_t>(k) * k);
  for (int rx = 0; rx < k; ++rx) {
    for (int tx = 0; tx < k; ++tx) {
      const std::uint64_t block =
          derive_stream(seed, stream_tag::kChannelBlock,
                        static_cast<std::uint64_t>(rx) * k + tx);
      ch.h(rx, tx) =
          gaussian_matrix(cfg.rx_antennas[rx], cfg.tx_antennas[tx], block);
    }
  }
  return ch;
}

PrecoderSet sample_initial_precoders(const NetworkConfig& cfg,
                                     std::uint64_t seed) {
  validate(cfg);
  PrecoderSet pre;
  pre.v.resize(cfg.user_count);
  for (int tx = 0; tx < cfg.user_count; ++tx) {
    const std::uint64_t block =
        derive_stream(seed, stream_tag::kPrecoderBlock,
                      static_cast<std::uint64_t>(tx));
    pre.v[tx] = gram_schmidt(
        gaussian_matrix(cfg.tx_antennas[tx], cfg.streams[tx], block));
  }
  return pre;
}

}  // namespace ia
