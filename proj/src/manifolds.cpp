#include "ia/manifolds.hpp"

#include <stdexcept>

#include "ia/errors.hpp"

namespace ia {

const char* to_string(ManifoldKind kind) {
  switch (kind) {
    case ManifoldKind::Euclidean:
      return "euclidean";
    case ManifoldKind::Stiefel:
      return "stiefel";
    case ManifoldKind::Grassmann:
      return "grassmann";
  }
  return "?";
}

std::optional<ManifoldKind> manifold_from_string(std::string_view name) {
  if (name == "euclidean") return ManifoldKind::Euclidean;
  if (name == "stiefel") return ManifoldKind::Stiefel;
  if (name == "grassmann") return ManifoldKind::Grassmann;
  return std::nullopt;
}

ComplexMatrix descent_direction(ManifoldKind kind, const ComplexMatrix& v,
                                const ComplexMatrix& grad) {
  switch (kind) {
    case ManifoldKind::Euclidean:
      return -grad;
    case ManifoldKind::Stiefel:
      return v * grad.adjoint() * v - grad;
    case ManifoldKind::Grassmann:
      return -(grad - v * (v.adjoint() * grad));
  }
  throw std::logic_error("descent_direction: unknown manifold kind");
}

double inner_product(ManifoldKind kind, const ComplexMatrix& v,
                     const ComplexMatrix& z1, const ComplexMatrix& z2) {
  switch (kind) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Grassmann:
      return (z2.adjoint() * z1).trace().real();
    case ManifoldKind::Stiefel: {
      const ComplexMatrix halved = z1 - 0.5 * (v * (v.adjoint() * z1));
      return (z2.adjoint() * halved).trace().real();
    }
  }
  throw std::logic_error("inner_product: unknown manifold kind");
}

ComplexMatrix retract(ManifoldKind kind, const ComplexMatrix& y) {
  switch (kind) {
    case ManifoldKind::Euclidean:
      return gram_schmidt(y);
    case ManifoldKind::Stiefel: {
      const ThinSvd svd = thin_svd(y);
      if (svd.s(svd.s.size() - 1) <= kRankTol * svd.s(0)) {
        throw RankDeficient("retract: input is numerically rank deficient");
      }
      return svd.u * svd.v.adjoint();  // polar factor, closest orthonormal
    }
    case ManifoldKind::Grassmann:
      return thin_qr(y).q;
  }
  throw std::logic_error("retract: unknown manifold kind");
}

int manifold_dim(ManifoldKind kind, int n, int p) {
  switch (kind) {
    case ManifoldKind::Euclidean:
      return n * p;
    case ManifoldKind::Stiefel:
      return n * p - p * (p + 1) / 2;
    case ManifoldKind::Grassmann:
      return p * (n - p);
  }
  throw std::logic_error("manifold_dim: unknown manifold kind");
}

int tangent_dim(ManifoldKind kind, int n, int p) {
  switch (kind) {
    case ManifoldKind::Euclidean:
      return 2 * n * p;
    case ManifoldKind::Stiefel:
      return p * (2 * n - p);
    case ManifoldKind::Grassmann:
      return p * (2 * n - 2 * p);
  }
  throw std::logic_error("tangent_dim: unknown manifold kind");
}

}  // namespace ia
