#include "ia/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <limits>

#include "ia/errors.hpp"

namespace ia {

bool is_finite(const ComplexMatrix& a) { return a.allFinite(); }

double hermitian_defect(const ComplexMatrix& a) {
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  return (a - a.adjoint()).norm() / scale;
}

namespace {

// Rotates every column so its largest-magnitude entry is real positive.
// Eigenvector phase is otherwise arbitrary; this pins it.
void pin_column_phases(ComplexMatrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index at = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > best) {
        best = mag;
        at = r;
      }
    }
    if (best <= 0.0) continue;
    m.col(c) *= std::conj(m(at, c) / best);
  }
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.rows() != a.cols()) {
    throw std::invalid_argument("hermitian_eig: square matrix required");
  }
  if (!is_finite(a)) {
    throw std::invalid_argument("hermitian_eig: non-finite entries");
  }
  if (hermitian_defect(a) > kOrthoTol) {
    throw NonHermitianInput("hermitian_eig: input not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("hermitian_eig: eigensolver did not converge");
  }
  EigenDecomposition out{solver.eigenvalues(), solver.eigenvectors()};
  pin_column_phases(out.vectors);
  return out;
}

ThinSvd thin_svd(const ComplexMatrix& y) {
  if (y.rows() < y.cols()) {
    throw std::invalid_argument("thin_svd: requires rows >= cols");
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(y,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

ThinQr thin_qr(const ComplexMatrix& y) {
  const Eigen::Index n = y.rows();
  const Eigen::Index p = y.cols();
  if (n < p) {
    throw std::invalid_argument("thin_qr: requires rows >= cols");
  }
  {
    Eigen::JacobiSVD<ComplexMatrix> svd(y);
    const RealVector& s = svd.singularValues();
    if (s(p - 1) <= kRankTol * s(0)) {
      throw RankDeficient("thin_qr: input is numerically rank deficient");
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(y);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, p);
  ComplexMatrix r =
      qr.matrixQR().topRows(p).template triangularView<Eigen::Upper>();
  // Fix the sign convention: real positive diagonal of R.
  for (Eigen::Index i = 0; i < p; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag == 0.0) {
      throw RankDeficient("thin_qr: zero pivot");
    }
    const Complex phase = r(i, i) / mag;
    r.row(i) *= std::conj(phase);
    q.col(i) *= phase;
  }
  return {std::move(q), std::move(r)};
}

ComplexMatrix gram_schmidt(const ComplexMatrix& y) {
  const Eigen::Index n = y.rows();
  const Eigen::Index p = y.cols();
  if (n < p) {
    throw std::invalid_argument("gram_schmidt: requires rows >= cols");
  }
  ComplexMatrix q(n, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    ComplexVector v = y.col(j);
    const double source_norm = v.norm();
    for (Eigen::Index i = 0; i < j; ++i) {
      v -= q.col(i) * q.col(i).dot(v);  // modified GS: project out updated v
    }
    const double vn = v.norm();
    if (vn <= kRankTol *
                  std::max(source_norm, std::numeric_limits<double>::min())) {
      throw RankDeficient("gram_schmidt: column " + std::to_string(j) +
                          " is linearly dependent");
    }
    q.col(j) = v / vn;
  }
  return q;
}

}  // namespace ia
