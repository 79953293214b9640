#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ia/alignment.hpp"
#include "ia/manifolds.hpp"
#include "ia/network.hpp"

namespace ia {

/// Armijo doubling is capped here; halving below kBetaFloor signals a
/// non-descent direction (StepUnderflow).
inline constexpr double kBetaCap = 1e6;
inline constexpr double kBetaFloor = 1e-20;

struct StopRule {
  int max_iterations = 1000;
  double cost_tolerance = 1e-10;     // absolute
  double relative_tolerance = 1e-6;  // cost / initial cost
};

enum class StopReason { MaxIterations, CostTolerance, RelativeTolerance };
const char* to_string(StopReason reason);

struct TracePoint {
  int iteration = 0;
  double cost = 0.0;
};

struct OptimizerState {
  PrecoderSet precoders;
  std::vector<double> beta;  // per-transmitter Armijo step size, persists
  int iteration = 0;
  double cost = 0.0;
  std::vector<TracePoint> trace;  // (iteration, cost), starts at iteration 0
};

/// One accepted transmitter update, enough to re-check the Armijo
/// inequalities after the fact.
struct StepRecord {
  int transmitter = 0;
  double beta = 0.0;
  ComplexMatrix direction;  // Z at the pre-step precoders
  PrecoderSet before;       // full precoder set before the step
  double cost_before = 0.0;
  double cost_after = 0.0;
};

struct OptimizeOptions {
  StopRule stop;
  bool beta_reset = false;  // reset beta to 1 at the start of every sweep
  std::function<void(const StepRecord&)> on_step;  // accepted steps only
  std::function<void(const OptimizerState&)> on_iteration;  // incl. iter 0
};

/// Two-phase Armijo rule with the retraction inside the search: doubling
/// tests the 2*beta candidate against a full beta*<Z,Z> decrease; halving
/// tests the beta candidate against a 1/2*beta*<Z,Z> decrease. Inner products
/// are the kind-specific ones. Returns the final beta and the retracted
/// precoder for transmitter `tx`. Directions with <Z,Z> below
/// 1e-14*max(1, f) short-circuit to (beta, unchanged precoder).
/// Throws StepUnderflow when beta falls below kBetaFloor.
std::pair<double, ComplexMatrix> armijo_adjust(ManifoldKind kind,
                                               const ChannelSet& ch,
                                               const PrecoderSet& pre,
                                               const NetworkConfig& cfg,
                                               int tx, const ComplexMatrix& z,
                                               double beta);

/// One sweep over transmitters j = 1..K in order; gradients are evaluated at
/// the current precoders, reflecting updates made earlier in the same sweep.
/// Step underflow skips the transmitter for this sweep, never aborts.
OptimizerState iterate_once(ManifoldKind kind, const ChannelSet& ch,
                            const NetworkConfig& cfg, OptimizerState state,
                            const OptimizeOptions* opts = nullptr);

struct OptimizeResult {
  OptimizerState state;
  StopReason reason = StopReason::MaxIterations;
};

/// Full steepest-descent loop from `init` until a stop criterion fires.
/// The returned trace has length iterations + 1, including iteration 0.
OptimizeResult optimize(ManifoldKind kind, const ChannelSet& ch,
                        const NetworkConfig& cfg, const PrecoderSet& init,
                        const OptimizeOptions& opts = {});

}  // namespace ia
