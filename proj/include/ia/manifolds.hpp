#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ia/numerics.hpp"

namespace ia {

/// Geometry used for the descent: flat complex matrix space with
/// Gram-Schmidt re-orthonormalization, the complex Stiefel manifold with the
/// SVD polar projection, or the complex Grassmann manifold with the QR
/// projection (points represented by orthonormal Stiefel representatives).
enum class ManifoldKind { Euclidean, Stiefel, Grassmann };

const char* to_string(ManifoldKind kind);
std::optional<ManifoldKind> manifold_from_string(std::string_view name);

/// Steepest descent direction at an orthonormal-column point V for a cost
/// whose Euclidean gradient is `grad`:
///   Euclidean:  Z = -grad
///   Stiefel:    Z = V grad^H V - grad          (tangent: V^H Z skew-Hermitian)
///   Grassmann:  Z = -(I - V V^H) grad          (tangent: V^H Z = 0)
ComplexMatrix descent_direction(ManifoldKind kind, const ComplexMatrix& v,
                                const ComplexMatrix& grad);

/// Riemannian inner product of two tangent vectors at V (real valued):
///   Euclidean / Grassmann:  Re tr(Z2^H Z1)
///   Stiefel:                Re tr(Z2^H (I - 1/2 V V^H) Z1)
double inner_product(ManifoldKind kind, const ComplexMatrix& v,
                     const ComplexMatrix& z1, const ComplexMatrix& z2);

/// Maps a full-column-rank matrix back to orthonormal columns:
///   Euclidean:  Gram-Schmidt
///   Stiefel:    U V^H from the thin SVD (the closest orthonormal matrix)
///   Grassmann:  Q factor of the thin QR (canonical subspace representative)
/// Throws RankDeficient.
ComplexMatrix retract(ManifoldKind kind, const ComplexMatrix& y);

/// Dimension of the search space for n x p points:
///   Euclidean np, Stiefel np - p(p+1)/2, Grassmann p(n-p).
int manifold_dim(ManifoldKind kind, int n, int p);

/// Tangent-space dimension: Euclidean 2np, Stiefel p(2n-p),
/// Grassmann p(2n-2p).
int tangent_dim(ManifoldKind kind, int n, int p);

}  // namespace ia
