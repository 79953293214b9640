#pragma once

#include <stdexcept>

namespace ia {

/// Input that was required to be Hermitian is not, beyond tolerance.
struct NonHermitianInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An iterative factorization failed to converge.
struct ConvergenceFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Matrix is numerically rank deficient where full column rank is required.
struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Armijo step size fell below the floor; the search direction does not
/// produce a decrease (e.g. at a degenerate spectrum).
struct StepUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Trace normalization requested for a run whose initial cost is already zero.
struct DegenerateStart : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A matrix expected to be safely invertible is not.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ia
