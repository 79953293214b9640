#pragma once

#include <Eigen/Dense>
#include <complex>

namespace ia {

// Dense complex matrices, column-major storage (Eigen default). All
// linear-algebra contracts used by the rest of the library live here.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

/// Orthonormality / Hermitian-symmetry tolerance shared across the library.
inline constexpr double kOrthoTol = 1e-10;
/// Numerical rank threshold, relative to the largest singular value.
inline constexpr double kRankTol = 1e-12;

/// Full eigendecomposition of a Hermitian matrix. Eigenvalues are real and
/// sorted ascending; column i of `vectors` pairs with `values[i]`.
struct EigenDecomposition {
  RealVector values;
  ComplexMatrix vectors;
};

/// Thin SVD of an n x p matrix (n >= p): Y = U diag(S) V^H with U n x p,
/// V p x p, S nonnegative and sorted descending.
struct ThinSvd {
  ComplexMatrix u;
  RealVector s;
  ComplexMatrix v;
};

/// Thin QR of an n x p matrix (n >= p): Y = Q R with Q n x p orthonormal and
/// R p x p upper triangular with real positive diagonal.
struct ThinQr {
  ComplexMatrix q;
  ComplexMatrix r;
};

bool is_finite(const ComplexMatrix& a);

/// ||A - A^H|| relative to ||A||; zero for exactly Hermitian input.
double hermitian_defect(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix (checked to within kOrthoTol).
/// Eigenvector phases are pinned per column (largest-magnitude entry made
/// real positive) so identical inputs give identical outputs.
/// Throws NonHermitianInput, ConvergenceFailure.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

/// Thin SVD; requires rows >= cols. Throws ConvergenceFailure.
ThinSvd thin_svd(const ComplexMatrix& y);

/// Thin QR with the positive-real-diagonal sign convention; requires
/// rows >= cols and numerical rank p. Throws RankDeficient.
ThinQr thin_qr(const ComplexMatrix& y);

/// Modified Gram-Schmidt orthonormalization. Column j of the output spans the
/// same subspace as the first j input columns and has a real positive inner
/// product with its source column. Throws RankDeficient.
ComplexMatrix gram_schmidt(const ComplexMatrix& y);

}  // namespace ia
