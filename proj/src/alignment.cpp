#include "ia/alignment.hpp"

#include <Eigen/Eigenvalues>
#include <stdexcept>
#include <string>

namespace ia {

namespace {

void check_instance(const ChannelSet& ch, const PrecoderSet& pre,
                    const NetworkConfig& cfg) {
  const std::size_t k = static_cast<std::size_t>(cfg.user_count);
  if (cfg.user_count < 1 || ch.user_count != cfg.user_count ||
      ch.blocks.size() != k * k || pre.v.size() != k) {
    throw std::invalid_argument("alignment: mismatched instance dimensions");
  }
}

}  // namespace

ComplexMatrix interference_covariance(const ChannelSet& ch,
                                      const PrecoderSet& pre,
                                      const NetworkConfig& cfg, int rx) {
  check_instance(ch, pre, cfg);
  const int n = cfg.rx_antennas[rx];
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  for (int tx = 0; tx < cfg.user_count; ++tx) {
    if (tx == rx) continue;
    const ComplexMatrix beamformed = ch.h(rx, tx) * pre.v[tx];
    q.selfadjointView<Eigen::Lower>().rankUpdate(
        beamformed, cfg.powers[tx] / cfg.streams[tx]);
  }
  return q.selfadjointView<Eigen::Lower>();
}

ReceiverAnalysis analyze_receiver(const ChannelSet& ch, const PrecoderSet& pre,
                                  const NetworkConfig& cfg, int rx) {
  ReceiverAnalysis out;
  out.q = interference_covariance(ch, pre, cfg, rx);
  out.eig = hermitian_eig(out.q);
  const int d = cfg.streams[rx];
  out.u = out.eig.vectors.leftCols(d);
  out.leakage = 0.0;
  for (int i = 0; i < d; ++i) {
    out.leakage += std::abs(out.eig.values(i));
  }
  return out;
}

double leakage_cost(const ChannelSet& ch, const PrecoderSet& pre,
                    const NetworkConfig& cfg) {
  check_instance(ch, pre, cfg);
  double total = 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver;
  for (int rx = 0; rx < cfg.user_count; ++rx) {
    const ComplexMatrix q = interference_covariance(ch, pre, cfg, rx);
    solver.compute(q, Eigen::EigenvaluesOnly);
    const RealVector& values = solver.eigenvalues();
    for (int i = 0; i < cfg.streams[rx]; ++i) {
      total += std::abs(values(i));
    }
  }
  return total;
}

std::vector<ComplexMatrix> receiver_filters(const ChannelSet& ch,
                                            const PrecoderSet& pre,
                                            const NetworkConfig& cfg) {
  std::vector<ComplexMatrix> filters;
  filters.reserve(cfg.user_count);
  for (int rx = 0; rx < cfg.user_count; ++rx) {
    filters.push_back(analyze_receiver(ch, pre, cfg, rx).u);
  }
  return filters;
}

ComplexMatrix euclidean_gradient(const ChannelSet& ch, const PrecoderSet& pre,
                                 const NetworkConfig& cfg, int tx,
                                 bool* degenerate_spectrum) {
  check_instance(ch, pre, cfg);
  const double weight = 2.0 * cfg.powers[tx] / cfg.streams[tx];
  ComplexMatrix grad =
      ComplexMatrix::Zero(cfg.tx_antennas[tx], cfg.streams[tx]);
  bool degenerate = false;
  for (int rx = 0; rx < cfg.user_count; ++rx) {
    if (rx == tx) continue;
    const ReceiverAnalysis a = analyze_receiver(ch, pre, cfg, rx);
    const int d = cfg.streams[rx];
    if (d < cfg.rx_antennas[rx] &&
        a.eig.values(d) - a.eig.values(d - 1) <= kEigenGapTol) {
      degenerate = true;
    }
    const ComplexMatrix& h = ch.h(rx, tx);
    grad.noalias() +=
        weight * (h.adjoint() * (a.u * (a.u.adjoint() * (h * pre.v[tx]))));
  }
  if (degenerate_spectrum != nullptr) {
    *degenerate_spectrum = degenerate;
  }
  return grad;
}

}  // namespace ia
