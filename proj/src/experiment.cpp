#include "ia/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ia/rng.hpp"

namespace ia {

void parallel_for(int jobs, int threads, const std::function<void(int)>& body) {
  if (jobs <= 0) return;
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, jobs);
  if (workers == 1) {
    for (int i = 0; i < jobs; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= jobs) return;
        body(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

ChannelSet channels_for_seed(const ExperimentConfig& cfg,
                             const NetworkConfig& net, int seed_index) {
  return sample_channels(
      net, derive_stream(cfg.master_seed, stream_tag::kChannels,
                         static_cast<std::uint64_t>(seed_index)));
}

PrecoderSet precoders_for_seed(const ExperimentConfig& cfg,
                               const NetworkConfig& net, int seed_index) {
  return sample_initial_precoders(
      net, derive_stream(cfg.master_seed, stream_tag::kPrecoders,
                         static_cast<std::uint64_t>(seed_index)));
}

namespace {

NetworkConfig network_at_power(const ExperimentConfig& cfg, double snr_db) {
  NetworkConfig net = cfg.network;
  net.powers.assign(net.user_count, power_from_snr_db(snr_db));
  return net;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_header(const ExperimentConfig& cfg, const char* schema) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# config_hash=%016llx master_seed=%llu",
                static_cast<unsigned long long>(config_hash(cfg)),
                static_cast<unsigned long long>(cfg.master_seed));
  return std::string(buf) + " schema=" + schema + "\n";
}

std::string sanitize(std::string message) {
  for (char& c : message) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return message;
}

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& contents) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + dir +
                             "': " + ec.message());
  }
  const std::string path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  out << contents;
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
  return path;
}

}  // namespace

ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
  validate(cfg);
  const NetworkConfig net = network_at_power(cfg, cfg.reference_snr_db);
  const int jobs = static_cast<int>(cfg.algorithms.size()) * cfg.seeds;
  ConvergenceResult result;
  result.runs.resize(jobs);
  parallel_for(jobs, cfg.threads, [&](int idx) {
    const int algo = idx / cfg.seeds;
    const int seed = idx % cfg.seeds;
    ConvergenceRun& run = result.runs[idx];
    run.algorithm = cfg.algorithms[algo];
    run.seed = seed;
    try {
      const ChannelSet ch = channels_for_seed(cfg, net, seed);
      const PrecoderSet init = precoders_for_seed(cfg, net, seed);
      OptimizeOptions opts;
      opts.stop = cfg.stop;
      opts.beta_reset = cfg.beta_reset;
      OptimizeResult out = optimize(run.algorithm, ch, net, init, opts);
      run.trace = std::move(out.state.trace);
      run.final_precoders = std::move(out.state.precoders);
      run.reason = out.reason;
    } catch (const std::exception& e) {
      run.error = e.what();
    }
  });
  return result;
}

std::vector<double> mean_normalized_trace(const ConvergenceResult& result,
                                          ManifoldKind algorithm) {
  std::size_t longest = 0;
  int used = 0;
  for (const ConvergenceRun& run : result.runs) {
    if (run.algorithm != algorithm || !run.error.empty() || run.trace.empty()) {
      continue;
    }
    longest = std::max(longest, run.trace.size());
    ++used;
  }
  std::vector<double> mean(longest, 0.0);
  if (used == 0) return mean;
  for (const ConvergenceRun& run : result.runs) {
    if (run.algorithm != algorithm || !run.error.empty() || run.trace.empty()) {
      continue;
    }
    const std::vector<double> normalized = normalized_leakage(run.trace);
    for (std::size_t t = 0; t < longest; ++t) {
      // Early-stopped traces hold their last value.
      mean[t] += t < normalized.size() ? normalized[t] : normalized.back();
    }
  }
  for (double& v : mean) v /= used;
  return mean;
}

std::string convergence_csv(const ExperimentConfig& cfg,
                            const ConvergenceResult& result) {
  std::ostringstream out;
  out << csv_header(cfg, "convergence-v1");
  out << "algorithm,seed,iteration,cost,normalized_cost,status\n";
  for (const ConvergenceRun& run : result.runs) {
    const char* algo = to_string(run.algorithm);
    if (!run.error.empty()) {
      out << algo << ',' << run.seed << ",0,nan,nan,error:" << sanitize(run.error)
          << '\n';
      continue;
    }
    const double initial = run.trace.front().cost;
    for (std::size_t t = 0; t < run.trace.size(); ++t) {
      const TracePoint& point = run.trace[t];
      const bool last = t + 1 == run.trace.size();
      out << algo << ',' << run.seed << ',' << point.iteration << ','
          << fmt(point.cost) << ',' << fmt(point.cost / initial) << ','
          << (last ? to_string(run.reason) : "ok") << '\n';
    }
  }
  return out.str();
}

std::string convergence_mean_csv(const ExperimentConfig& cfg,
                                 const ConvergenceResult& result) {
  std::ostringstream out;
  out << csv_header(cfg, "convergence-mean-v1");
  out << "algorithm,iteration,mean_normalized_cost,n_seeds\n";
  for (ManifoldKind algorithm : cfg.algorithms) {
    int used = 0;
    for (const ConvergenceRun& run : result.runs) {
      if (run.algorithm == algorithm && run.error.empty() && !run.trace.empty()) {
        ++used;
      }
    }
    const std::vector<double> mean = mean_normalized_trace(result, algorithm);
    for (std::size_t t = 0; t < mean.size(); ++t) {
      out << to_string(algorithm) << ',' << t << ',' << fmt(mean[t]) << ','
          << used << '\n';
    }
  }
  return out.str();
}

RateResult run_rate(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.snr_db_list.empty()) {
    throw std::invalid_argument("rate experiment: snr_db list is empty");
  }
  const int algos = static_cast<int>(cfg.algorithms.size());
  const int points = static_cast<int>(cfg.snr_db_list.size());
  // rate[(algo, snr, seed)]; NaN marks a failed seed.
  std::vector<double> rates(
      static_cast<std::size_t>(algos) * points * cfg.seeds,
      std::numeric_limits<double>::quiet_NaN());

  if (cfg.rate_reoptimize) {
    const int jobs = algos * points * cfg.seeds;
    parallel_for(jobs, cfg.threads, [&](int idx) {
      const int algo = idx / (points * cfg.seeds);
      const int point = idx / cfg.seeds % points;
      const int seed = idx % cfg.seeds;
      const NetworkConfig net = network_at_power(cfg, cfg.snr_db_list[point]);
      try {
        const ChannelSet ch = channels_for_seed(cfg, net, seed);
        const PrecoderSet init = precoders_for_seed(cfg, net, seed);
        OptimizeOptions opts;
        opts.stop = cfg.stop;
        opts.beta_reset = cfg.beta_reset;
        const OptimizeResult out =
            optimize(cfg.algorithms[algo], ch, net, init, opts);
        rates[idx] =
            sum_rate(ch, out.state.precoders, net, cfg.snr_db_list[point]);
      } catch (const std::exception&) {
        // Leave NaN; the cell aggregates over the seeds that succeeded.
      }
    });
  } else {
    // Cheaper mode: one optimization per (algorithm, seed) at the reference
    // power, then the precoders are held fixed across the sweep.
    const int jobs = algos * cfg.seeds;
    parallel_for(jobs, cfg.threads, [&](int idx) {
      const int algo = idx / cfg.seeds;
      const int seed = idx % cfg.seeds;
      const NetworkConfig net = network_at_power(cfg, cfg.reference_snr_db);
      try {
        const ChannelSet ch = channels_for_seed(cfg, net, seed);
        const PrecoderSet init = precoders_for_seed(cfg, net, seed);
        OptimizeOptions opts;
        opts.stop = cfg.stop;
        opts.beta_reset = cfg.beta_reset;
        const OptimizeResult out =
            optimize(cfg.algorithms[algo], ch, net, init, opts);
        for (int point = 0; point < points; ++point) {
          rates[(static_cast<std::size_t>(algo) * points + point) * cfg.seeds +
                seed] =
              sum_rate(ch, out.state.precoders, net, cfg.snr_db_list[point]);
        }
      } catch (const std::exception&) {
      }
    });
  }

  RateResult result;
  for (int algo = 0; algo < algos; ++algo) {
    std::vector<RatePoint> curve;
    for (int point = 0; point < points; ++point) {
      double sum = 0.0;
      int n = 0;
      for (int seed = 0; seed < cfg.seeds; ++seed) {
        const double r =
            rates[(static_cast<std::size_t>(algo) * points + point) *
                      cfg.seeds +
                  seed];
        if (!std::isnan(r)) {
          sum += r;
          ++n;
        }
      }
      const double mean = n > 0 ? sum / n : std::numeric_limits<double>::quiet_NaN();
      double var = 0.0;
      for (int seed = 0; seed < cfg.seeds; ++seed) {
        const double r =
            rates[(static_cast<std::size_t>(algo) * points + point) *
                      cfg.seeds +
                  seed];
        if (!std::isnan(r)) {
          var += (r - mean) * (r - mean);
        }
      }
      const double stddev = n > 1 ? std::sqrt(var / (n - 1)) : 0.0;
      result.cells.push_back(
          {cfg.algorithms[algo], cfg.snr_db_list[point], mean, stddev, n});
      if (n > 0) {
        curve.push_back({cfg.snr_db_list[point], mean});
      }
    }
    if (curve.size() >= 2) {
      result.summaries.push_back({cfg.algorithms[algo], dof_slope(curve),
                                  static_cast<int>(curve.size())});
    }
  }
  return result;
}

std::string rate_csv(const ExperimentConfig& cfg, const RateResult& result) {
  std::ostringstream out;
  out << csv_header(cfg, "rate-v1");
  out << "algorithm,snr_db,mean_rate,std_rate,n_seeds\n";
  for (const RateCell& cell : result.cells) {
    out << to_string(cell.algorithm) << ',' << fmt(cell.snr_db) << ','
        << fmt(cell.mean_rate) << ',' << fmt(cell.std_rate) << ','
        << cell.n_seeds << '\n';
  }
  // Summary rows reuse the schema with the literal tag in the snr_db column
  // and the number of fitted points in n_seeds.
  for (const RateSummary& summary : result.summaries) {
    out << to_string(summary.algorithm) << ",dof_slope," << fmt(summary.dof)
        << ",," << summary.n_points << '\n';
  }
  if (result.summaries.empty()) {
    out << "# dof_slope omitted: fewer than 2 snr points\n";
  }
  return out.str();
}

AngleResult run_angles(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.network.user_count < 3) {
    throw std::invalid_argument(
        "angle experiment: at least 3 users required for pairwise angles");
  }
  const NetworkConfig net = network_at_power(cfg, cfg.reference_snr_db);
  AngleResult result;
  for (ManifoldKind algorithm : cfg.algorithms) {
    const ChannelSet ch = channels_for_seed(cfg, net, cfg.angle_seed);
    const PrecoderSet init = precoders_for_seed(cfg, net, cfg.angle_seed);
    OptimizeOptions opts;
    opts.stop = cfg.stop;
    opts.beta_reset = cfg.beta_reset;
    opts.on_iteration = [&](const OptimizerState& state) {
      for (int rx = 0; rx < net.user_count; ++rx) {
        result.rows.push_back(
            {algorithm, cfg.angle_seed, state.iteration, rx,
             max_interference_angle(ch, state.precoders, net, rx)});
      }
    };
    optimize(algorithm, ch, net, init, opts);
  }
  return result;
}

std::string angles_csv(const ExperimentConfig& cfg, const AngleResult& result) {
  std::ostringstream out;
  out << csv_header(cfg, "angles-v1");
  out << "algorithm,seed,iteration,receiver,max_angle_rad\n";
  for (const AngleRow& row : result.rows) {
    out << to_string(row.algorithm) << ',' << row.seed << ',' << row.iteration
        << ',' << row.receiver << ',' << fmt(row.max_angle_rad) << '\n';
  }
  return out.str();
}

std::vector<std::string> run_convergence_experiment(const ExperimentConfig& cfg) {
  const ConvergenceResult result = run_convergence(cfg);
  return {
      write_file(cfg.output_dir, "convergence.csv",
                 convergence_csv(cfg, result)),
      write_file(cfg.output_dir, "convergence_mean.csv",
                 convergence_mean_csv(cfg, result)),
  };
}

std::vector<std::string> run_rate_experiment(const ExperimentConfig& cfg) {
  const RateResult result = run_rate(cfg);
  return {write_file(cfg.output_dir, "rate.csv", rate_csv(cfg, result))};
}

std::vector<std::string> run_angle_experiment(const ExperimentConfig& cfg) {
  const AngleResult result = run_angles(cfg);
  return {write_file(cfg.output_dir, "angles.csv", angles_csv(cfg, result))};
}

}  // namespace ia
