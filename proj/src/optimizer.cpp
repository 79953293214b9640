#include "ia/optimizer.hpp"

#include <stdexcept>

#include "ia/errors.hpp"

namespace ia {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::MaxIterations:
      return "max_iterations";
    case StopReason::CostTolerance:
      return "cost_tolerance";
    case StopReason::RelativeTolerance:
      return "relative_tolerance";
  }
  return "?";
}

namespace {

struct SearchOutcome {
  double beta = 0.0;
  ComplexMatrix precoder;    // accepted precoder for the transmitter
  double cost_after = 0.0;
  bool skipped = false;      // stationary direction, nothing searched
  bool underflow = false;    // beta fell below kBetaFloor
};

// Two-phase Armijo search for transmitter `tx` with the current cost already
// known. Candidates that lose rank under large steps count as rejected.
SearchOutcome armijo_search(ManifoldKind kind, const ChannelSet& ch,
                            const PrecoderSet& pre, const NetworkConfig& cfg,
                            int tx, const ComplexMatrix& z, double beta,
                            double current_cost) {
  const double zz = inner_product(kind, pre.v[tx], z, z);
  if (zz <= 1e-14 * std::max(1.0, current_cost)) {
    // The doubling test at Z = 0 would never terminate; the iterate is
    // stationary, so leave it (and beta) alone.
    return {beta, pre.v[tx], current_cost, true, false};
  }

  PrecoderSet scratch = pre;
  const auto cost_at = [&](double step) {
    scratch.v[tx] = retract(kind, pre.v[tx] + step * z);
    return leakage_cost(ch, scratch, cfg);
  };

  // Doubling: grow beta while even the 2*beta step clears the full
  // beta*<Z,Z> decrease.
  while (beta < kBetaCap) {
    double doubled_cost;
    try {
      doubled_cost = cost_at(2.0 * beta);
    } catch (const RankDeficient&) {
      break;
    }
    if (current_cost - doubled_cost >= beta * zz) {
      beta *= 2.0;
    } else {
      break;
    }
  }

  // Halving: shrink beta until the beta step clears 1/2*beta*<Z,Z>.
  for (;;) {
    bool acceptable = false;
    double stepped_cost = current_cost;
    try {
      stepped_cost = cost_at(beta);
      acceptable = current_cost - stepped_cost >= 0.5 * beta * zz;
    } catch (const RankDeficient&) {
      acceptable = false;
    }
    if (acceptable) {
      return {beta, scratch.v[tx], stepped_cost, false, false};
    }
    beta *= 0.5;
    if (beta < kBetaFloor) {
      return {beta, {}, current_cost, false, true};
    }
  }
}

}  // namespace

std::pair<double, ComplexMatrix> armijo_adjust(ManifoldKind kind,
                                               const ChannelSet& ch,
                                               const PrecoderSet& pre,
                                               const NetworkConfig& cfg,
                                               int tx, const ComplexMatrix& z,
                                               double beta) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("armijo_adjust: beta must be positive");
  }
  const double current_cost = leakage_cost(ch, pre, cfg);
  const SearchOutcome out =
      armijo_search(kind, ch, pre, cfg, tx, z, beta, current_cost);
  if (out.underflow) {
    throw StepUnderflow("armijo_adjust: step size underflow at transmitter " +
                        std::to_string(tx));
  }
  return {out.beta, out.precoder};
}

OptimizerState iterate_once(ManifoldKind kind, const ChannelSet& ch,
                            const NetworkConfig& cfg, OptimizerState state,
                            const OptimizeOptions* opts) {
  if (opts != nullptr && opts->beta_reset) {
    state.beta.assign(state.beta.size(), 1.0);
  }
  double current_cost = state.cost;
  for (int tx = 0; tx < cfg.user_count; ++tx) {
    const ComplexMatrix grad = euclidean_gradient(ch, state.precoders, cfg, tx);
    const ComplexMatrix z =
        descent_direction(kind, state.precoders.v[tx], grad);
    const SearchOutcome out = armijo_search(kind, ch, state.precoders, cfg, tx,
                                            z, state.beta[tx], current_cost);
    if (out.underflow || out.skipped) {
      continue;  // transmitter sits this sweep out; beta keeps its old value
    }
    if (opts != nullptr && opts->on_step) {
      opts->on_step(StepRecord{tx, out.beta, z, state.precoders, current_cost,
                               out.cost_after});
    }
    state.precoders.v[tx] = out.precoder;
    state.beta[tx] = out.beta;
    current_cost = out.cost_after;
  }
  state.iteration += 1;
  state.cost = current_cost;
  state.trace.push_back({state.iteration, current_cost});
  return state;
}

OptimizeResult optimize(ManifoldKind kind, const ChannelSet& ch,
                        const NetworkConfig& cfg, const PrecoderSet& init,
                        const OptimizeOptions& opts) {
  if (opts.stop.max_iterations < 0 || opts.stop.cost_tolerance < 0.0 ||
      opts.stop.relative_tolerance < 0.0) {
    throw std::invalid_argument("optimize: stop rule fields must be >= 0");
  }
  OptimizerState state;
  state.precoders = init;
  state.beta.assign(cfg.user_count, 1.0);
  state.iteration = 0;
  state.cost = leakage_cost(ch, init, cfg);
  state.trace = {{0, state.cost}};
  if (opts.on_iteration) {
    opts.on_iteration(state);
  }
  const double initial_cost = state.cost;
  for (;;) {
    if (state.cost <= opts.stop.cost_tolerance) {
      return {std::move(state), StopReason::CostTolerance};
    }
    if (initial_cost > 0.0 &&
        state.cost <= opts.stop.relative_tolerance * initial_cost) {
      return {std::move(state), StopReason::RelativeTolerance};
    }
    if (state.iteration >= opts.stop.max_iterations) {
      return {std::move(state), StopReason::MaxIterations};
    }
    state = iterate_once(kind, ch, cfg, std::move(state), &opts);
    if (opts.on_iteration) {
      opts.on_iteration(state);
    }
  }
}

}  // namespace ia
