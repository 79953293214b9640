// Acceptance suite: runs the headline experiments end to end and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ia/errors.hpp"
#include "ia/experiment.hpp"
#include "ia/metrics.hpp"
#include "ia/optimizer.hpp"
#include "ia/rng.hpp"

using ia::ComplexMatrix;
using ia::ExperimentConfig;
using ia::ManifoldKind;

namespace {

constexpr std::uint64_t kMasterSeed = 2024;

int failures = 0;

void report(int index, const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %d. %s — %s\n", ok ? "PASS" : "FAIL", index, name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

ExperimentConfig convergence_config() {
  ExperimentConfig cfg;
  cfg.network = ia::NetworkConfig::symmetric(3, 2, 2, 1);
  cfg.seeds = 100;
  cfg.master_seed = kMasterSeed;
  cfg.stop = {500, 0.0, 1e-9};
  cfg.reference_snr_db = 20.0;
  return cfg;
}

ExperimentConfig rate_config() {
  ExperimentConfig cfg = convergence_config();
  cfg.seeds = 50;
  cfg.stop = {1000, 0.0, 1e-8};
  for (double snr = 0.0; snr <= 50.0; snr += 5.0) {
    cfg.snr_db_list.push_back(snr);
  }
  return cfg;
}

double final_normalized(const ia::ConvergenceRun& run) {
  return run.trace.back().cost / run.trace.front().cost;
}

int count_converged(const ia::ConvergenceResult& result, ManifoldKind kind,
                    double threshold) {
  int n = 0;
  for (const auto& run : result.runs) {
    if (run.algorithm == kind && run.error.empty() &&
        final_normalized(run) <= threshold) {
      ++n;
    }
  }
  return n;
}

double mean_at_sweep(const ia::ConvergenceResult& result, ManifoldKind kind,
                     std::size_t sweep) {
  const auto mean = ia::mean_normalized_trace(result, kind);
  return mean[std::min(sweep, mean.size() - 1)];
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();

  // Shared batch for criteria 1-3 (and the descent checks of criterion 6):
  // 100 seeds, all three algorithms, identical channel/initializer draws.
  const ExperimentConfig conv_cfg = convergence_config();
  const ia::ConvergenceResult conv = ia::run_convergence(conv_cfg);
  const double conv_seconds = seconds_since(t0);

  // Criterion 1: convergence counts at normalized leakage 1e-6.
  {
    const int st = count_converged(conv, ManifoldKind::Stiefel, 1e-6);
    const int gr = count_converged(conv, ManifoldKind::Grassmann, 1e-6);
    const int eu = count_converged(conv, ManifoldKind::Euclidean, 1e-6);
    const bool ok =
        st >= 95 && gr >= 95 && eu >= 80 && conv_seconds < 120.0;
    report(1, "convergence (100 seeds, 20 dB, 500 sweeps)", ok,
           fmt("stiefel %d/100 (need 95), grassmann %d/100 (need 95), "
               "euclidean %d/100 (need 80), batch %.1fs (need <120s)",
               st, gr, eu, conv_seconds));
  }

  // Criterion 2: convergence ordering at sweep 50.
  {
    const double eu = mean_at_sweep(conv, ManifoldKind::Euclidean, 50);
    const double st = mean_at_sweep(conv, ManifoldKind::Stiefel, 50);
    const double gr = mean_at_sweep(conv, ManifoldKind::Grassmann, 50);
    const double gap = std::abs(std::log10(st / gr));
    const bool ok = st <= eu && gr <= eu && gap <= 1.0;
    report(2, "relative convergence ordering at sweep 50", ok,
           fmt("mean euclidean %.3e, stiefel %.3e, grassmann %.3e, "
               "|log10(st/gr)| = %.2f (need <= 1)",
               eu, st, gr, gap));
  }

  // Criterion 3: interference angles on every seed converged below 1e-8.
  // Runs get enough sweeps to settle well past the 1e-8 gate, so the check
  // exercises genuinely converged iterates rather than boundary stragglers.
  {
    ExperimentConfig deep_cfg = conv_cfg;
    deep_cfg.stop = {3000, 0.0, 1e-12};
    const ia::ConvergenceResult deep = ia::run_convergence(deep_cfg);
    const ia::NetworkConfig net = [&] {
      ia::NetworkConfig n = deep_cfg.network;
      n.powers.assign(n.user_count,
                      ia::power_from_snr_db(deep_cfg.reference_snr_db));
      return n;
    }();
    int checked = 0;
    int bad = 0;
    double worst = 0.0;
    for (const auto& run : deep.runs) {
      if (!run.error.empty() || final_normalized(run) > 1e-8) continue;
      ++checked;
      const ia::ChannelSet ch = ia::channels_for_seed(deep_cfg, net, run.seed);
      for (int rx = 0; rx < net.user_count; ++rx) {
        const double angle = ia::max_interference_angle(
            ch, run.final_precoders, net, rx);
        worst = std::max(worst, angle);
        if (angle > 1e-3) ++bad;
      }
    }
    const bool ok = checked > 0 && bad == 0;
    report(3, "subspace angles at converged iterates", ok,
           fmt("%d converged runs checked, %d receiver violations, worst "
               "angle %.2e rad (need <= 1e-3)",
               checked, bad, worst));
  }

  // Criterion 4: DoF slope over the 30-50 dB part of a 0-50 dB sweep.
  const ExperimentConfig rate_cfg = rate_config();
  {
    const ia::RateResult rate = ia::run_rate(rate_cfg);
    bool ok = rate.summaries.size() == rate_cfg.algorithms.size();
    std::string detail;
    for (const auto& summary : rate.summaries) {
      ok = ok && summary.dof >= 2.7 && summary.dof <= 3.3;
      detail += fmt("%s %.3f ", ia::to_string(summary.algorithm), summary.dof);
    }
    report(4, "DoF slope in [2.7, 3.3] (50 seeds, 0-50 dB)", ok,
           detail +
               "(theoretical KM/2 = 3; the euclidean variant stalls "
               "permanently on ~16% of seeds at every power, capping its "
               "mean-rate slope near 3 x converged fraction — see README "
               "behavior notes)");
  }

  // Criterion 5: gradient matches central finite differences on instances
  // with a comfortable eigen-gap. Combos that never produce one (M=4, d=1
  // leaves two structurally zero eigenvalues, so the gap is identically
  // zero and the cost is constant) rotate to the next combo after a bounded
  // number of draws.
  {
    int checked = 0;
    int bad = 0;
    double worst = 0.0;
    const int dims[6][2] = {{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {4, 2}};
    std::uint64_t seed = 1;
    for (int slot = 0; slot < 50; ++slot) {
      int m = 0;
      int d = 0;
      ia::NetworkConfig cfg;
      ia::ChannelSet ch;
      ia::PrecoderSet pre;
      bool found = false;
      for (int rotate = 0; rotate < 6 && !found; ++rotate) {
        m = dims[(slot + rotate) % 6][0];
        d = dims[(slot + rotate) % 6][1];
        cfg = ia::NetworkConfig::symmetric(3, m, m, d);
        for (int attempt = 0; attempt < 100 && !found; ++attempt) {
          ch = ia::sample_channels(cfg,
                                   ia::derive_stream(kMasterSeed, 0xf0, seed));
          pre = ia::sample_initial_precoders(
              cfg, ia::derive_stream(kMasterSeed, 0xf1, seed));
          ++seed;
          bool gap_ok = true;
          for (int rx = 0; rx < 3 && gap_ok; ++rx) {
            const auto a = ia::analyze_receiver(ch, pre, cfg, rx);
            if (d < m && a.eig.values(d) - a.eig.values(d - 1) <= 1e-6) {
              gap_ok = false;
            }
          }
          found = gap_ok;
        }
      }
      if (!found) continue;
      ++checked;
      for (int tx = 0; tx < 3; ++tx) {
        const ComplexMatrix grad = ia::euclidean_gradient(ch, pre, cfg, tx);
        ia::PrecoderSet probe = pre;
        ComplexMatrix fd(m, d);
        const double step = 1e-6;
        for (int r = 0; r < m; ++r) {
          for (int c = 0; c < d; ++c) {
            const ia::Complex center = pre.v[tx](r, c);
            probe.v[tx](r, c) = center + step;
            const double fpr = ia::leakage_cost(ch, probe, cfg);
            probe.v[tx](r, c) = center - step;
            const double fmr = ia::leakage_cost(ch, probe, cfg);
            probe.v[tx](r, c) = center + ia::Complex(0, step);
            const double fpi = ia::leakage_cost(ch, probe, cfg);
            probe.v[tx](r, c) = center - ia::Complex(0, step);
            const double fmi = ia::leakage_cost(ch, probe, cfg);
            probe.v[tx](r, c) = center;
            fd(r, c) = ia::Complex((fpr - fmr) / (2 * step),
                                   (fpi - fmi) / (2 * step));
          }
        }
        const double rel = (grad - fd).norm() / std::max(1.0, grad.norm());
        worst = std::max(worst, rel);
        if (rel > 1e-5) ++bad;
      }
    }
    report(5, "gradient vs central finite differences (50 instances)",
           checked == 50 && bad == 0,
           fmt("%d instances x 3 transmitters, %d failures, worst relative "
               "error %.2e (need <= 1e-5)",
               checked, bad, worst));
  }

  // Criterion 6: invariant suite.
  {
    std::string detail;
    bool ok = true;

    // Monotone descent on every criterion-1 trace.
    int monotone_bad = 0;
    for (const auto& run : conv.runs) {
      for (std::size_t t = 1; t < run.trace.size(); ++t) {
        if (!(run.trace[t].cost <= run.trace[t - 1].cost + 1e-12)) {
          ++monotone_bad;
        }
      }
    }
    ok = ok && monotone_bad == 0;
    detail += fmt("monotone violations %d; ", monotone_bad);

    // Ten instrumented runs: per-sweep orthonormality and Armijo records.
    const ia::NetworkConfig net = [&] {
      ia::NetworkConfig n = conv_cfg.network;
      n.powers.assign(n.user_count, ia::power_from_snr_db(20.0));
      return n;
    }();
    double worst_ortho = 0.0;
    int armijo_bad = 0;
    int armijo_steps = 0;
    for (int seed = 0; seed < 10; ++seed) {
      const ManifoldKind kind = conv_cfg.algorithms[seed % 3];
      const ia::ChannelSet ch = ia::channels_for_seed(conv_cfg, net, seed);
      const ia::PrecoderSet init = ia::precoders_for_seed(conv_cfg, net, seed);
      std::vector<ia::StepRecord> steps;
      ia::OptimizeOptions opts;
      opts.stop = {200, 0.0, 1e-8};
      opts.on_step = [&](const ia::StepRecord& rec) { steps.push_back(rec); };
      opts.on_iteration = [&](const ia::OptimizerState& state) {
        for (const ComplexMatrix& v : state.precoders.v) {
          const double defect =
              (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols()))
                  .norm();
          worst_ortho = std::max(worst_ortho, defect);
        }
      };
      ia::optimize(kind, ch, net, init, opts);
      for (const auto& rec : steps) {
        ++armijo_steps;
        const int tx = rec.transmitter;
        const double zz = ia::inner_product(kind, rec.before.v[tx],
                                            rec.direction, rec.direction);
        const double slack = 1e-12 * std::max(1.0, rec.cost_before);
        ia::PrecoderSet probe = rec.before;
        probe.v[tx] = ia::retract(
            kind, rec.before.v[tx] + rec.beta * rec.direction);
        const double at_beta = ia::leakage_cost(ch, probe, net);
        if (!(rec.cost_before - at_beta >= 0.5 * rec.beta * zz - slack)) {
          ++armijo_bad;
        }
        try {
          probe.v[tx] = ia::retract(
              kind, rec.before.v[tx] + 2.0 * rec.beta * rec.direction);
          const double at_double = ia::leakage_cost(ch, probe, net);
          if (!(rec.cost_before - at_double < rec.beta * zz + slack)) {
            ++armijo_bad;
          }
        } catch (const ia::RankDeficient&) {
          // The doubled candidate is unusable, so doubling was rightly
          // rejected.
        }
      }
    }
    ok = ok && worst_ortho <= 1e-10 && armijo_bad == 0;
    detail += fmt("orthonormality defect %.1e; armijo checks %d bad %d; ",
                  worst_ortho, armijo_steps, armijo_bad);

    // Unitary invariance of the cost on 20 random instances.
    double worst_invariance = 0.0;
    for (int i = 0; i < 20; ++i) {
      const ia::NetworkConfig cfg = ia::NetworkConfig::symmetric(3, 3, 3, 2);
      const ia::ChannelSet ch = ia::sample_channels(
          cfg, ia::derive_stream(kMasterSeed, 0xa0, i));
      const ia::PrecoderSet pre = ia::sample_initial_precoders(
          cfg, ia::derive_stream(kMasterSeed, 0xa1, i));
      ia::PrecoderSet rotated = pre;
      for (int tx = 0; tx < 3; ++tx) {
        ia::SplitMix64 gen(ia::derive_stream(kMasterSeed, 0xa2, 3 * i + tx));
        ComplexMatrix g(2, 2);
        for (int r = 0; r < 2; ++r) {
          for (int c = 0; c < 2; ++c) g(r, c) = gen.complex_gaussian();
        }
        rotated.v[tx] = pre.v[tx] * ia::gram_schmidt(g);
      }
      const double f0 = ia::leakage_cost(ch, pre, cfg);
      const double f1 = ia::leakage_cost(ch, rotated, cfg);
      worst_invariance =
          std::max(worst_invariance, std::abs(f1 - f0) / std::max(1.0, f0));
    }
    ok = ok && worst_invariance <= 1e-10;
    detail += fmt("unitary invariance %.1e; ", worst_invariance);

    // Stiefel projection optimality against 200 random orthonormal samples,
    // and retraction fixed points.
    double optimality_slack = 0.0;
    bool fixed_ok = true;
    for (int i = 0; i < 5; ++i) {
      ia::SplitMix64 gen(ia::derive_stream(kMasterSeed, 0xb0, i));
      ComplexMatrix y(4, 2);
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 2; ++c) y(r, c) = gen.complex_gaussian();
      }
      const ComplexMatrix projected = ia::retract(ManifoldKind::Stiefel, y);
      const double dist = (y - projected).norm();
      for (int s = 0; s < 200; ++s) {
        ia::SplitMix64 sg(ia::derive_stream(kMasterSeed, 0xb1, 200 * i + s));
        ComplexMatrix g(4, 2);
        for (int r = 0; r < 4; ++r) {
          for (int c = 0; c < 2; ++c) g(r, c) = sg.complex_gaussian();
        }
        const ComplexMatrix x = ia::gram_schmidt(g);
        optimality_slack =
            std::max(optimality_slack, dist - (y - x).norm());
      }
      const ComplexMatrix q = ia::gram_schmidt(y);
      fixed_ok = fixed_ok &&
                 (ia::retract(ManifoldKind::Stiefel, q) - q).norm() <= 1e-10 &&
                 (ia::retract(ManifoldKind::Euclidean, q) - q).norm() <= 1e-10;
      const ComplexMatrix qg = ia::retract(ManifoldKind::Grassmann, q);
      for (double angle : ia::principal_angles(qg, q)) {
        fixed_ok = fixed_ok && angle <= 1e-10;
      }
    }
    ok = ok && optimality_slack <= 1e-9 && fixed_ok;
    detail += fmt("projection slack %.1e; fixed points %s", optimality_slack,
                  fixed_ok ? "ok" : "BAD");

    report(6, "invariant suite", ok, detail);
  }

  // Criterion 7: byte-identical CSVs across two executions of the batch.
  {
    namespace fs = std::filesystem;
    const fs::path base = fs::path("acceptance_out");
    std::error_code ec;
    fs::remove_all(base, ec);
    bool ok = true;
    std::string detail;
    std::vector<std::string> names;
    for (const char* leg : {"a", "b"}) {
      ExperimentConfig conv_run = conv_cfg;
      conv_run.output_dir = (base / leg).string();
      ia::run_convergence_experiment(conv_run);
      ExperimentConfig rate_run = rate_cfg;
      rate_run.output_dir = (base / leg).string();
      ia::run_rate_experiment(rate_run);
      ExperimentConfig angle_run = conv_cfg;
      angle_run.output_dir = (base / leg).string();
      ia::run_angle_experiment(angle_run);
    }
    for (const char* name :
         {"convergence.csv", "convergence_mean.csv", "rate.csv",
          "angles.csv"}) {
      const std::string a = read_file((base / "a" / name).string());
      const std::string b = read_file((base / "b" / name).string());
      const bool same = !a.empty() && a == b;
      ok = ok && same;
      detail += fmt("%s %s; ", name, same ? "identical" : "DIFFER");
    }
    report(7, "batch determinism (byte-identical CSVs)", ok, detail);
  }

  std::printf("%s: %d/7 criteria passed (total %.1fs)\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
              7 - failures, seconds_since(t0));
  return failures;
}
