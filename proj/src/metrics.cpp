#include "ia/metrics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ia/errors.hpp"

namespace ia {

std::vector<double> normalized_leakage(const std::vector<TracePoint>& trace) {
  if (trace.empty()) {
    throw std::invalid_argument("normalized_leakage: empty trace");
  }
  const double initial = trace.front().cost;
  if (initial <= 1e-15) {
    throw DegenerateStart(
        "normalized_leakage: initial cost is already (numerically) zero");
  }
  std::vector<double> out;
  out.reserve(trace.size());
  for (const TracePoint& point : trace) {
    out.push_back(point.cost / initial);
  }
  return out;
}

std::vector<double> principal_angles(const ComplexMatrix& b1,
                                     const ComplexMatrix& b2) {
  const ComplexMatrix overlap = b1.adjoint() * b2;
  Eigen::JacobiSVD<ComplexMatrix> cos_svd(overlap);
  const RealVector& cosines = cos_svd.singularValues();
  // acos of a cosine near 1 loses half the digits; small angles are taken
  // from the sine route instead (singular values of the projection residual).
  const ComplexMatrix residual = b2 - b1 * overlap;
  Eigen::JacobiSVD<ComplexMatrix> sin_svd(residual);
  const RealVector& sines = sin_svd.singularValues();
  const Eigen::Index count = cosines.size();
  std::vector<double> angles;
  angles.reserve(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const double c = std::clamp(cosines(i), 0.0, 1.0);
    if (c * c > 0.5) {
      // Cosines descend and sines ascend with the angle, so index i of one
      // list pairs with the mirrored index of the other.
      const double s = std::clamp(sines(count - 1 - i), 0.0, 1.0);
      angles.push_back(std::asin(s));
    } else {
      angles.push_back(std::acos(c));
    }
  }
  return angles;  // ascending
}

std::vector<AnglePair> interference_angles(const ChannelSet& ch,
                                           const PrecoderSet& pre,
                                           const NetworkConfig& cfg, int rx) {
  std::vector<int> interferers;
  for (int tx = 0; tx < cfg.user_count; ++tx) {
    if (tx != rx) interferers.push_back(tx);
  }
  std::vector<AnglePair> out;
  if (interferers.size() < 2) {
    return out;
  }
  std::vector<ComplexMatrix> bases(cfg.user_count);
  for (int tx : interferers) {
    bases[tx] = gram_schmidt(ch.h(rx, tx) * pre.v[tx]);
  }
  for (std::size_t a = 0; a < interferers.size(); ++a) {
    for (std::size_t b = a + 1; b < interferers.size(); ++b) {
      const int ta = interferers[a];
      const int tb = interferers[b];
      out.push_back({ta, tb, principal_angles(bases[ta], bases[tb])});
    }
  }
  return out;
}

double max_interference_angle(const ChannelSet& ch, const PrecoderSet& pre,
                              const NetworkConfig& cfg, int rx) {
  double worst = 0.0;
  for (const AnglePair& pair : interference_angles(ch, pre, cfg, rx)) {
    if (!pair.angles.empty()) {
      worst = std::max(worst, pair.angles.back());
    }
  }
  return worst;
}

namespace {

// log det of a Hermitian positive definite matrix via Cholesky.
double log_det_hpd(const ComplexMatrix& a) {
  Eigen::LLT<ComplexMatrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("sum_rate: noise-plus-interference matrix is not "
                           "positive definite");
  }
  double out = 0.0;
  const ComplexMatrix l = llt.matrixL();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    out += 2.0 * std::log(l(i, i).real());
  }
  return out;
}

}  // namespace

double sum_rate_at_powers(const ChannelSet& ch, const PrecoderSet& pre,
                          const NetworkConfig& cfg) {
  double total = 0.0;
  for (int rx = 0; rx < cfg.user_count; ++rx) {
    const ReceiverAnalysis a = analyze_receiver(ch, pre, cfg, rx);
    const int d = cfg.streams[rx];
    ComplexMatrix noise_interf =
        ComplexMatrix::Identity(d, d) + a.u.adjoint() * a.q * a.u;
    noise_interf = 0.5 * (noise_interf + noise_interf.adjoint());
    const ComplexMatrix effective = a.u.adjoint() * ch.h(rx, rx) * pre.v[rx];
    ComplexMatrix signal_plus =
        noise_interf +
        (cfg.powers[rx] / d) * (effective * effective.adjoint());
    signal_plus = 0.5 * (signal_plus + signal_plus.adjoint());
    total += (log_det_hpd(signal_plus) - log_det_hpd(noise_interf)) /
             std::log(2.0);
  }
  return total;
}

double sum_rate(const ChannelSet& ch, const PrecoderSet& pre,
                const NetworkConfig& cfg, double snr_db) {
  NetworkConfig swept = cfg;
  swept.powers.assign(cfg.user_count, power_from_snr_db(snr_db));
  return sum_rate_at_powers(ch, pre, swept);
}

double dof_slope(const std::vector<RatePoint>& rates) {
  if (rates.size() < 2) {
    throw std::invalid_argument("dof_slope: at least 2 points required");
  }
  for (std::size_t i = 1; i < rates.size(); ++i) {
    if (!(rates[i].snr_db > rates[i - 1].snr_db)) {
      throw std::invalid_argument("dof_slope: snr_db must strictly increase");
    }
  }
  const std::size_t use = std::max<std::size_t>(2, rates.size() / 2);
  const std::size_t first = rates.size() - use;
  // Abscissa is log2 of the linear SNR.
  const double db_to_log2 = std::log2(10.0) / 10.0;
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = first; i < rates.size(); ++i) {
    mean_x += rates[i].snr_db * db_to_log2;
    mean_y += rates[i].rate;
  }
  mean_x /= use;
  mean_y /= use;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = first; i < rates.size(); ++i) {
    const double dx = rates[i].snr_db * db_to_log2 - mean_x;
    sxx += dx * dx;
    sxy += dx * (rates[i].rate - mean_y);
  }
  return sxy / sxx;
}

MetricsReport build_metrics_report(const ChannelSet& ch,
                                   const NetworkConfig& cfg,
                                   const std::vector<TracePoint>& trace,
                                   const PrecoderSet& final_precoders,
                                   const std::vector<RatePoint>& rates) {
  MetricsReport report;
  report.normalized_trace = normalized_leakage(trace);
  report.angles.resize(cfg.user_count);
  for (int rx = 0; rx < cfg.user_count; ++rx) {
    for (const AnglePair& pair :
         interference_angles(ch, final_precoders, cfg, rx)) {
      report.angles[rx].insert(report.angles[rx].end(), pair.angles.begin(),
                               pair.angles.end());
    }
  }
  report.rates = rates;
  report.dof_estimate = rates.size() >= 2 ? dof_slope(rates) : 0.0;
  return report;
}

}  // namespace ia
