// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ratmat/types.hpp"

namespace ratmat
{

/// Polynomial with complex coefficients in ascending monomial order,
/// p(z) = c[0] + c[1] z + ... + c[d] z^d.
class Polynomial
{
public:
  Polynomial() : coeffs_{Complex(0.0)} {}
  explicit Polynomial(std::vector<Complex> coeffs);

  static Polynomial constant(Complex c) { return Polynomial({c}); }

  /// prod_k (z - roots[k]).
  static Polynomial from_roots(std::span<const Complex> roots);

  [[nodiscard]] const std::vector<Complex> &coeffs() const { return coeffs_; }

  /// Index of the highest nonzero coefficient (0 for the zero polynomial).
  [[nodiscard]] std::size_t degree() const;

  [[nodiscard]] Complex operator()(Complex z) const;
  [[nodiscard]] Polynomial derivative() const;

  /// Taylor coefficients a_j with p(z0 + h) = sum_j a_j h^j (all d+1 of them).
  [[nodiscard]] std::vector<Complex> taylor_at(Complex z0) const;

  /// Matrix argument via Horner's rule.
  [[nodiscard]] ComplexMatrix operator()(const ComplexMatrix &A) const;

  /// p(A) x via Horner's rule with matrix-vector products only.
  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix &A, const ComplexMatrix &X) const;

  friend Polynomial operator+(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator-(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(const Polynomial &a, const Polynomial &b);
  friend Polynomial operator*(Complex s, const Polynomial &p);

  /// Long division: returns (quotient, remainder) with deg remainder < deg divisor.
  [[nodiscard]] std::pair<Polynomial, Polynomial> divmod(const Polynomial &divisor) const;

private:
  std::vector<Complex> coeffs_;
};

/// A finite pole (or interpolation node) with its multiplicity.
struct Pole
{
  Complex value;
  int multiplicity = 1;
};

using PoleList = std::vector<Pole>;

/// sum of multiplicities.
std::size_t total_multiplicity(const PoleList &poles);

/// v(z) = prod_k (z - value_k)^{multiplicity_k}; 1 for an empty list.
Complex denominator_value(const PoleList &poles, Complex z);

/// Exact Taylor coefficients of v at z, c_j = v^{(j)}(z) / j!, for j = 0..order.
/// Computed from the product form, never from monomial coefficients.
std::vector<Complex> denominator_taylor(const PoleList &poles, Complex z, std::size_t order);

/// Natural magnitude of v(z), prod_k (|z| + |value_k|)^{m_k}, used as a scale
/// for "v vanishes" tests.
double denominator_scale(const PoleList &poles, Complex z);

/// Monomial expansion of v.
Polynomial denominator_polynomial(const PoleList &poles);

/// Groups a list of points into distinct values with multiplicities: points
/// within tol * max(1, |a|, |b|) of a cluster's first member join it.
PoleList cluster_points(std::span<const Complex> points, double rel_tol);

/// Truncated power-series product and reciprocal (first `order + 1` terms).
std::vector<Complex> series_mul(std::span<const Complex> a, std::span<const Complex> b,
                                std::size_t order);
std::vector<Complex> series_reciprocal(std::span<const Complex> a, std::size_t order);

}  // namespace ratmat
