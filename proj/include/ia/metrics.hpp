#pragma once

#include <vector>

#include "ia/alignment.hpp"
#include "ia/network.hpp"
#include "ia/optimizer.hpp"

namespace ia {

/// Cost trace divided by its initial value; entry 0 is exactly 1.
/// Throws DegenerateStart when the initial cost is <= 1e-15.
std::vector<double> normalized_leakage(const std::vector<TracePoint>& trace);

/// Principal angles (radians, ascending) between the column spans of two
/// matrices with orthonormal columns: arccos of the singular values of
/// B1^H B2, clamped to [0, 1].
std::vector<double> principal_angles(const ComplexMatrix& b1,
                                     const ComplexMatrix& b2);

struct AnglePair {
  int tx_a = 0;
  int tx_b = 0;
  std::vector<double> angles;  // ascending
};

/// Pairwise principal angles between the interference subspaces
/// span(H[k,j] V[j]) at receiver `rx`, one entry per interferer pair.
/// Empty when the receiver sees fewer than two interferers.
/// Throws RankDeficient if an interference block loses column rank.
std::vector<AnglePair> interference_angles(const ChannelSet& ch,
                                           const PrecoderSet& pre,
                                           const NetworkConfig& cfg, int rx);

/// Largest pairwise interference angle at `rx`; 0 with < 2 interferers.
double max_interference_angle(const ChannelSet& ch, const PrecoderSet& pre,
                              const NetworkConfig& cfg, int rx);

/// Achievable sum rate (bits/s/Hz) of the zero-forcing-subspace receiver
/// treating residual interference as noise, at the powers in `cfg`:
///   R = sum_k log2 det(I + (P[k]/d[k]) (U^H (I+Q) U)^-1 U^H H[kk] V[k]
///                                       V[k]^H H[kk]^H U).
/// Throws NumericalFailure if a noise-plus-interference matrix is not
/// positive definite (cannot occur for PSD + identity).
double sum_rate_at_powers(const ChannelSet& ch, const PrecoderSet& pre,
                          const NetworkConfig& cfg);

/// Same, with every user's power set to 10^(snr_db/10) (noise variance 1).
double sum_rate(const ChannelSet& ch, const PrecoderSet& pre,
                const NetworkConfig& cfg, double snr_db);

struct RatePoint {
  double snr_db = 0.0;
  double rate = 0.0;
};

/// High-SNR slope of rate versus log2(SNR): least-squares fit over the
/// highest-SNR half of the points (at least two). Requires snr_db strictly
/// increasing.
double dof_slope(const std::vector<RatePoint>& rates);

/// Post-hoc evaluation bundle for one finished run.
struct MetricsReport {
  std::vector<double> normalized_trace;
  std::vector<std::vector<double>> angles;  // per receiver, all pairs flattened
  std::vector<RatePoint> rates;
  double dof_estimate = 0.0;
};

MetricsReport build_metrics_report(const ChannelSet& ch,
                                   const NetworkConfig& cfg,
                                   const std::vector<TracePoint>& trace,
                                   const PrecoderSet& final_precoders,
                                   const std::vector<RatePoint>& rates);

}  // namespace ia
