#pragma once

#include <cstdint>
#include <vector>

#include "ia/numerics.hpp"

namespace ia {

/// Problem-instance skeleton for the K-user MIMO interference channel.
/// Noise variance is fixed at 1, so `powers` are linear-scale SNRs.
struct NetworkConfig {
  int user_count = 0;               // K
  std::vector<int> tx_antennas;     // M[j], per transmitter
  std::vector<int> rx_antennas;     // N[k], per receiver
  std::vector<int> streams;         // d[k], per pair
  std::vector<double> powers;       // P[j], linear scale

  static NetworkConfig symmetric(int users, int tx, int rx, int streams,
                                 double power = 1.0);
};

/// Throws std::invalid_argument unless K >= 2, 1 <= d <= min(M, N) and P > 0
/// for every user, and all per-user vectors have length K.
void validate(const NetworkConfig& cfg);

inline double power_from_snr_db(double snr_db) {
  return std::pow(10.0, snr_db / 10.0);
}

struct FeasibilityReport {
  std::vector<bool> per_user;
  bool all = true;
};

/// Interference alignment is feasible for user j iff
/// M[j] + N[j] >= (K + 1) d[j]. Advisory only; optimization may still be run
/// on infeasible instances.
FeasibilityReport check_feasibility(const NetworkConfig& cfg);

/// All K x K channel matrices of one realization. Block (k, j) is the
/// N[k] x M[j] channel from transmitter j to receiver k.
struct ChannelSet {
  int user_count = 0;
  std::vector<ComplexMatrix> blocks;  // row-major grid, (k, j) at k*K + j
  std::uint64_t seed = 0;

  const ComplexMatrix& h(int rx, int tx) const {
    return blocks[static_cast<std::size_t>(rx) * user_count + tx];
  }
  ComplexMatrix& h(int rx, int tx) {
    return blocks[static_cast<std::size_t>(rx) * user_count + tx];
  }
};

/// The K unitary-column precoders; v[j] is M[j] x d[j] with orthonormal
/// columns. This is the optimization variable.
struct PrecoderSet {
  std::vector<ComplexMatrix> v;
};

/// I.i.d. CN(0,1) channel entries, deterministic in (dims, seed). Distinct
/// (k, j) blocks use independently derived substreams.
ChannelSet sample_channels(const NetworkConfig& cfg, std::uint64_t seed);

/// Haar-style start: Gram-Schmidt of an i.i.d. complex Gaussian matrix per
/// transmitter. Deterministic in (dims, seed).
PrecoderSet sample_initial_precoders(const NetworkConfig& cfg,
                                     std::uint64_t seed);

}  // namespace ia
