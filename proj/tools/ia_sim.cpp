// Monte-Carlo simulator for interference-alignment precoder design on the
// K-user MIMO interference channel. Runs one of three experiments
// (convergence / rate / angle) across seeds and algorithms and writes CSVs.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ia/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interference-alignment precoder simulator"};

  std::string experiment;
  std::string config_path;
  std::string algo_list;
  std::string snr_list;
  std::string out_dir;
  int seeds = -1;
  long long master_seed = -1;
  int iters = -1;
  double tol = -1.0;
  int threads = -1;

  app.add_option("--experiment", experiment,
                 "Experiment to run: convergence | rate | angle")
      ->required()
      ->check(CLI::IsMember({"convergence", "rate", "angle"}));
  app.add_option("--config", config_path, "Flat key=value config file");
  app.add_option("--algo", algo_list,
                 "Comma list of euclidean|stiefel|grassmann");
  app.add_option("--seeds", seeds, "Number of Monte-Carlo realizations");
  app.add_option("--master-seed", master_seed, "Master seed for all streams");
  app.add_option("--iters", iters, "Maximum sweeps per run");
  app.add_option("--tol", tol, "Relative leakage stop tolerance");
  app.add_option("--snr", snr_list, "Comma list of SNR points in dB");
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--threads", threads, "Worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  ia::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) {
      cfg = ia::load_config_file(config_path);
    }
    if (!algo_list.empty()) ia::apply_key_value(cfg, "algorithms", algo_list);
    if (seeds >= 0) cfg.seeds = seeds;
    if (master_seed >= 0) cfg.master_seed = static_cast<std::uint64_t>(master_seed);
    if (iters >= 0) cfg.stop.max_iterations = iters;
    if (tol >= 0.0) cfg.stop.relative_tolerance = tol;
    if (!snr_list.empty()) ia::apply_key_value(cfg, "snr_db", snr_list);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;
    ia::validate(cfg);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::vector<std::string> written;
    if (experiment == "convergence") {
      written = ia::run_convergence_experiment(cfg);
    } else if (experiment == "rate") {
      written = ia::run_rate_experiment(cfg);
    } else {
      written = ia::run_angle_experiment(cfg);
    }
    for (const std::string& path : written) {
      std::cout << path << "\n";
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
