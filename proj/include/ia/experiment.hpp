#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ia/manifolds.hpp"
#include "ia/metrics.hpp"
#include "ia/network.hpp"
#include "ia/optimizer.hpp"

namespace ia {

/// One Monte-Carlo batch: which network, which algorithms, how many seeds,
/// and where the CSVs go. All three experiment types share it.
struct ExperimentConfig {
  NetworkConfig network = NetworkConfig::symmetric(3, 2, 2, 1);
  std::vector<double> snr_db_list;
  int seeds = 100;
  std::uint64_t master_seed = 1;
  std::vector<ManifoldKind> algorithms = {
      ManifoldKind::Euclidean, ManifoldKind::Stiefel, ManifoldKind::Grassmann};
  StopRule stop;
  bool beta_reset = false;
  std::string output_dir = ".";
  double reference_snr_db = 20.0;  // power used by convergence/angle runs
  bool rate_reoptimize = true;     // re-optimize precoders per SNR point
  int angle_seed = 0;              // designated seed for the angle experiment
  int threads = 0;                 // 0 = hardware concurrency
};

/// Throws std::invalid_argument on violated invariants (seeds >= 1,
/// algorithms nonempty, valid network, ...). Rate runs additionally require a
/// nonempty snr_db_list.
void validate(const ExperimentConfig& cfg);

/// Flat key=value config file ('#' starts a comment). Unknown keys are
/// errors. See README for the key list.
ExperimentConfig load_config_file(const std::string& path);
void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);

/// Canonical serialization of every field, and the FNV-1a hash of it that is
/// recorded in every CSV header.
std::string config_summary(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

/// Channels / initial precoders for realization `seed_index`, derived from
/// the master seed so that all algorithms of one realization share the same
/// draws and realizations are mutually independent.
ChannelSet channels_for_seed(const ExperimentConfig& cfg,
                             const NetworkConfig& net, int seed_index);
PrecoderSet precoders_for_seed(const ExperimentConfig& cfg,
                               const NetworkConfig& net, int seed_index);

// ---------------------------------------------------------------------------
// In-memory results. The CSV emitters below serialize exactly these.

struct ConvergenceRun {
  ManifoldKind algorithm = ManifoldKind::Euclidean;
  int seed = 0;
  std::vector<TracePoint> trace;
  PrecoderSet final_precoders;
  StopReason reason = StopReason::MaxIterations;
  std::string error;  // empty on success
};

struct ConvergenceResult {
  std::vector<ConvergenceRun> runs;  // algorithm-major, seed-minor order
};

ConvergenceResult run_convergence(const ExperimentConfig& cfg);

/// Mean normalized leakage per iteration for one algorithm; traces shorter
/// than the longest (early stop) carry their last value forward.
std::vector<double> mean_normalized_trace(const ConvergenceResult& result,
                                          ManifoldKind algorithm);

struct RateCell {
  ManifoldKind algorithm = ManifoldKind::Euclidean;
  double snr_db = 0.0;
  double mean_rate = 0.0;
  double std_rate = 0.0;
  int n_seeds = 0;
};

struct RateSummary {
  ManifoldKind algorithm = ManifoldKind::Euclidean;
  double dof = 0.0;
  int n_points = 0;
};

struct RateResult {
  std::vector<RateCell> cells;        // algorithm-major, snr-minor
  std::vector<RateSummary> summaries;  // empty when < 2 snr points
};

RateResult run_rate(const ExperimentConfig& cfg);

struct AngleRow {
  ManifoldKind algorithm = ManifoldKind::Euclidean;
  int seed = 0;
  int iteration = 0;
  int receiver = 0;
  double max_angle_rad = 0.0;
};

struct AngleResult {
  std::vector<AngleRow> rows;
};

AngleResult run_angles(const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// CSV emission. Every file starts with a comment line carrying the config
// hash and master seed, then the column header.

std::string convergence_csv(const ExperimentConfig& cfg,
                            const ConvergenceResult& result);
std::string convergence_mean_csv(const ExperimentConfig& cfg,
                                 const ConvergenceResult& result);
std::string rate_csv(const ExperimentConfig& cfg, const RateResult& result);
std::string angles_csv(const ExperimentConfig& cfg, const AngleResult& result);

/// Run + write into cfg.output_dir; return the written paths.
/// convergence -> convergence.csv, convergence_mean.csv
/// rate        -> rate.csv
/// angle       -> angles.csv
std::vector<std::string> run_convergence_experiment(const ExperimentConfig& cfg);
std::vector<std::string> run_rate_experiment(const ExperimentConfig& cfg);
std::vector<std::string> run_angle_experiment(const ExperimentConfig& cfg);

/// Bounded worker pool; results must be written to per-index slots so output
/// order never depends on scheduling. threads == 0 picks hardware
/// concurrency.
void parallel_for(int jobs, int threads,
                  const std::function<void(int)>& body);

}  // namespace ia
