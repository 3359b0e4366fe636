// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ratmat/types.hpp"

namespace ratmat
{

// ---------------------------------------------------------------------------
// Eigen-decomposition A = S diag(eigenvalues) S^{-1}
// ---------------------------------------------------------------------------

/// Diagonalization of a square matrix. Every f(A) evaluated through this type
/// is S diag(f(eigenvalues)) S^{-1}.
///
/// A factorization built from a defective (or numerically defective) matrix
/// still carries valid eigenvalues, but usable() is false and any attempt to
/// use S or S^{-1} throws.
class EigenFactorization
{
public:
  /// Builds the factorization from an eigenvector matrix and eigenvalues;
  /// S^{-1} is computed by LU. Throws if S is singular or if
  /// ||S S^{-1} - I||_max exceeds the allowance for its condition number.
  EigenFactorization(ComplexMatrix S, ComplexVector eigenvalues);

  /// Same, with a caller-supplied inverse that is checked, not recomputed.
  EigenFactorization(ComplexMatrix S, ComplexVector eigenvalues, ComplexMatrix S_inv);

  /// Eigenvalues only; S is flagged unusable.
  static EigenFactorization eigenvalues_only(ComplexVector eigenvalues);

  [[nodiscard]] std::size_t order() const { return static_cast<std::size_t>(eigenvalues_.size()); }
  [[nodiscard]] const ComplexVector &eigenvalues() const { return eigenvalues_; }
  [[nodiscard]] bool usable() const { return usable_; }
  [[nodiscard]] const ComplexMatrix &S() const;
  [[nodiscard]] const ComplexMatrix &S_inv() const;

  /// Reconstructs S diag(eigenvalues) S^{-1}.
  [[nodiscard]] ComplexMatrix reconstruct() const;

private:
  EigenFactorization() = default;
  void check_inverse();

  ComplexMatrix S_;
  ComplexVector eigenvalues_;
  ComplexMatrix S_inv_;
  bool usable_ = false;
};

/// Reciprocal condition estimate of an LU factorization. Eigen's estimator
/// breaks down on an exactly zero pivot, so that case (and any non-finite
/// estimate) reports 0.
double lu_rcond(const Eigen::PartialPivLU<ComplexMatrix> &lu);

/// Result of Gram-Schmidt on a list of columns: orthonormal Q and the indices
/// of the input vectors that contributed a new direction.
struct OrthonormalBasis
{
  ComplexMatrix Q;
  std::vector<std::size_t> kept;
};

inline constexpr double kDefaultDependenceTol = 1e-10;

/// Modified Gram-Schmidt with one reorthogonalization pass. A vector is
/// dropped iff its residual after projection has norm <= dep_tol times its
/// original norm. Throws on empty input, mismatched dimensions, or if every
/// vector is dropped ("rank zero").
OrthonormalBasis mgs_orthonormalize(std::span<const ComplexVector> cols,
                                    double dep_tol = kDefaultDependenceTol);

/// Largest order accepted by eig_small.
inline constexpr std::size_t kEigSmallMaxOrder = 64;

/// Dense complex eigenproblem for order <= 64 (Hessenberg reduction followed
/// by shifted QR). Eigenvalues are always returned; the eigenvector matrix is
/// flagged unusable when it is numerically singular.
EigenFactorization eig_small(const ComplexMatrix &A);

struct HermitianExtremes
{
  double q_min;
  double q_max;
};

/// Smallest and largest eigenvalues of a Hermitian matrix. The input is
/// symmetrized; it must be Hermitian to 1e-10 ||A||_max.
HermitianExtremes eig_extreme_hermitian(const ComplexMatrix &A);

/// Roots of c_0 + c_1 z + ... + c_d z^d (ascending coefficients) as the
/// eigenvalues of the companion matrix. Requires d >= 1 and c_d != 0.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);

// ---------------------------------------------------------------------------
// Planar geometry
// ---------------------------------------------------------------------------

/// z-component of (b - a) x (c - a).
double cross(Complex a, Complex b, Complex c);

/// Convex polygon with counterclockwise vertices. One vertex is a point and
/// two vertices a segment.
class ConvexPolygon
{
public:
  /// Validates that the vertices form a convex counterclockwise chain.
  explicit ConvexPolygon(std::vector<Complex> vertices);

  [[nodiscard]] const std::vector<Complex> &vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] double perimeter() const;
  [[nodiscard]] double area() const;

  /// Point-in-polygon with an absolute slack (distance to the boundary).
  [[nodiscard]] bool contains(Complex z, double slack = 0.0) const;

  /// Distance from z to the polygon (0 inside).
  [[nodiscard]] double distance(Complex z) const;

private:
  std::vector<Complex> vertices_;
};

/// Monotone-chain convex hull with exact comparisons. Output starts at the
/// lexicographically smallest (Re, Im) point; collinear boundary points are
/// dropped.
ConvexPolygon convex_hull(std::span<const Complex> points);

/// k points on the polygon boundary, vertices included, with each edge split
/// into pieces so that consecutive gaps are as equal as possible. A segment
/// returns k points including both ends; a point returns just itself.
std::vector<Complex> hull_boundary_samples(const ConvexPolygon &poly, std::size_t k);

}  // namespace ratmat
