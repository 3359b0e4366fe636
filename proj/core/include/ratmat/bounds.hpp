// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "ratmat/interp.hpp"
#include "ratmat/matfun.hpp"
#include "ratmat/numcore.hpp"
#include "ratmat/types.hpp"

namespace ratmat
{

/// g(z) = (v f)^(N)(z) / N!, the scalar factor of the remainder estimate.
using DerivativeKernel = std::function<Complex(Complex)>;

/// g for f = exp_t, from the closed form of the derivative.
DerivativeKernel exp_kernel(const PoleList &poles, std::size_t N, double t);

/// g for a general jet; f must provide derivatives up to order N.
DerivativeKernel jet_kernel(const PoleList &poles, std::size_t N, JetFunction f);

/// Data of the estimate
///   || f(A) - r(A) || <= max_{s, mu} || Omega(A) v(A)^{-1} g((1-s) mu I + s A) ||
/// with r interpolating f at `nodes` and having denominator v.
/// The max over mu runs over samples on the hull boundary.
struct BoundQuery
{
  NodeList nodes;
  PoleList poles;
  DerivativeKernel g;
  ConvexPolygon hull;
  std::vector<double> s_grid;
  std::vector<Complex> mu_samples;

  /// hull = co(nodes), n_s uniform s values in [0, 1], n_mu boundary samples
  /// (raised to the vertex count if smaller).
  static BoundQuery standard(NodeList nodes, PoleList poles, DerivativeKernel g,
                             std::size_t n_s = 11, std::size_t n_mu = 50);

  /// Checks grid and sample invariants and that v does not vanish at a node.
  void validate() const;

  /// Omega(z) / v(z).
  [[nodiscard]] Complex omega_over_v(Complex z) const;
};

/// n uniform points l / (n - 1), l = 0..n-1 (just {0} for n = 1).
std::vector<double> uniform_grid(std::size_t n);

/// How the core matrix is applied.
enum class CoreRoute
{
  /// Omega(A) v(A)^{-1} by partial fractions and LU solves, the function of
  /// the shifted matrix by the eigen-factorization.
  PartialFractions,
  /// S diag(h_i) S^{-1} with h_i the full scalar factor at each eigenvalue.
  Diagonal,
};

struct BoundResult
{
  double value = 0.0;
  double argmax_s = 0.0;
  Complex argmax_mu = 0.0;
  std::size_t n_s = 0;
  std::size_t n_mu = 0;
  /// Values in evaluation order (mu outer, s inner).
  std::vector<double> samples;
};

/// A together with its diagonalization; both are needed because Omega / v is
/// applied through A and the transcendental factor through the eigenbasis.
struct DiagonalizedMatrix
{
  ComplexMatrix A;
  EigenFactorization fac;

  explicit DiagonalizedMatrix(EigenFactorization f);
  DiagonalizedMatrix(ComplexMatrix a, EigenFactorization f);
};

/// Omega(A) v(A)^{-1} g((1 - s) mu I + s A).
ComplexMatrix bound_core_matrix(const BoundQuery &q, const DiagonalizedMatrix &M, double s,
                                Complex mu, CoreRoute route = CoreRoute::PartialFractions);

/// max over the grid of || core b ||_2.
BoundResult bound_vector(const BoundQuery &q, const DiagonalizedMatrix &M, const ComplexVector &b,
                         CoreRoute route = CoreRoute::Diagonal);

/// max over the grid of | d^H core b |.
BoundResult bound_bilinear(const BoundQuery &q, const DiagonalizedMatrix &M,
                           const ComplexVector &b, const ComplexVector &d,
                           CoreRoute route = CoreRoute::Diagonal);

/// max over the grid of || core ||_2 (square root of the top eigenvalue of
/// core^H core).
BoundResult bound_matrix_norm(const BoundQuery &q, const DiagonalizedMatrix &M,
                              CoreRoute route = CoreRoute::Diagonal);

struct PadeBound
{
  RationalInterpolant approximant;
  BoundResult bound;
};

/// [L/M] Pade approximant of f at z0 and the matrix-norm bound on
/// || f(A) - r(A) ||, with all N = L + M + 1 nodes at z0.
PadeBound bound_pade(const DiagonalizedMatrix &M, Complex z0, std::size_t L, std::size_t Mdeg,
                     const JetFunction &f, std::size_t n_s = 11);

/// Largest eigenvalue of (A + A^H) / 2.
double log_norm(const ComplexMatrix &A);

/// Intersection of the strips q_min(A_phi) <= Re(e^{-i phi} z) <= q_max(A_phi),
/// A_phi the Hermitian part of e^{-i phi} A. Contains the numerical range.
ConvexPolygon numerical_range_box(const ComplexMatrix &A, const std::vector<double> &angles);

/// Angles 0 and -pi/2: the bounding rectangle of the numerical range.
ConvexPolygon numerical_range_box(const ComplexMatrix &A);

/// Crouzeix-type scalar majorant
///   C * max_{lambda, s, mu} | Omega(lambda) / v(lambda) g((1-s) mu + s lambda) | * b_norm
/// with lambda over n_lambda samples of the boundary of Psi and (s, mu) over
/// the query grid. Psi must contain the numerical range.
double crouzeix_scalar_bound(const BoundQuery &q, const ConvexPolygon &psi, double b_norm,
                             double C, std::size_t n_lambda = 50);

}  // namespace ratmat
