#pragma once

#include <vector>

#include "ia/network.hpp"
#include "ia/numerics.hpp"

namespace ia {

/// Eigen-gap threshold below which the leakage cost is non-smooth and the
/// gradient formula degrades to a subgradient.
inline constexpr double kEigenGapTol = 1e-9;

/// Everything the receiver-side analysis produces for one receiver:
/// interference covariance, its spectrum, the zero-forcing subspace (the
/// d smallest eigenvectors) and the leakage trapped in it.
struct ReceiverAnalysis {
  ComplexMatrix q;         // N[k] x N[k], Hermitian PSD
  EigenDecomposition eig;  // of q, values ascending
  ComplexMatrix u;         // N[k] x d[k], eigenvectors of the smallest values
  double leakage = 0.0;    // sum of the d[k] smallest |eigenvalues|
};

/// Q[k] = sum_{j != k} (P[j]/d[j]) H[kj] V[j] V[j]^H H[kj]^H.
/// Exactly Hermitian by construction (rank updates on one triangle).
ComplexMatrix interference_covariance(const ChannelSet& ch,
                                      const PrecoderSet& pre,
                                      const NetworkConfig& cfg, int rx);

ReceiverAnalysis analyze_receiver(const ChannelSet& ch, const PrecoderSet& pre,
                                  const NetworkConfig& cfg, int rx);

/// Total leakage interference f = sum_k sum_{i<=d[k]} |lambda_i(Q[k])| with
/// eigenvalues ascending. Well defined for any precoders (orthonormal or not).
double leakage_cost(const ChannelSet& ch, const PrecoderSet& pre,
                    const NetworkConfig& cfg);

/// Zero-forcing filters U[k]: the d[k] eigenvectors of Q[k] with smallest
/// eigenvalues, for every receiver.
std::vector<ComplexMatrix> receiver_filters(const ChannelSet& ch,
                                            const PrecoderSet& pre,
                                            const NetworkConfig& cfg);

/// Euclidean gradient of the leakage cost with respect to V[j] under the real
/// inner product Re tr(Z2^H Z1):
///   D = 2 sum_{k != j} (P[j]/d[j]) H[kj]^H U[k] U[k]^H H[kj] V[j].
/// When some receiver's d-th and (d+1)-th eigenvalues are separated by less
/// than kEigenGapTol the result is a subgradient and `degenerate_spectrum`
/// (when non-null) is set.
ComplexMatrix euclidean_gradient(const ChannelSet& ch, const PrecoderSet& pre,
                                 const NetworkConfig& cfg, int tx,
                                 bool* degenerate_spectrum = nullptr);

}  // namespace ia
