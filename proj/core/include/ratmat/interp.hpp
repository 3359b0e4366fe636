// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ratmat/polynomial.hpp"
#include "ratmat/types.hpp"

namespace ratmat
{

/// Nodes closer than this (absolute) are the same node.
inline constexpr double kConfluenceTol = 1e-12;

/// Interpolation nodes z_1..z_N; repetition encodes multiplicity.
///
/// On construction nodes within kConfluenceTol of an earlier node are snapped
/// to it and moved next to it, so equal nodes are adjacent and bitwise equal.
/// Distinct nodes keep their order of first appearance.
class NodeList
{
public:
  NodeList() = default;
  explicit NodeList(std::span<const Complex> nodes);
  NodeList(std::initializer_list<Complex> nodes)
    : NodeList(std::span<const Complex>(nodes.begin(), nodes.size()))
  {
  }
  /// Each distinct value repeated by its multiplicity.
  static NodeList from_multiplicities(const PoleList &groups);

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] bool empty() const { return nodes_.empty(); }
  [[nodiscard]] const std::vector<Complex> &nodes() const { return nodes_; }
  [[nodiscard]] Complex operator[](std::size_t i) const { return nodes_[i]; }

  /// Distinct nodes with multiplicities, in storage order.
  [[nodiscard]] PoleList distinct() const;
  [[nodiscard]] int max_multiplicity() const;

  /// Omega(z) = prod_k (z - z_k).
  [[nodiscard]] Complex omega(Complex z) const;
  [[nodiscard]] Polynomial omega_polynomial() const;

  /// This list with z appended (then re-canonicalized).
  [[nodiscard]] NodeList with(Complex z) const;

private:
  std::vector<Complex> nodes_;
};

/// An analytic function that reports its derivatives: eval(z, order) returns
/// f(z), f'(z), ..., f^(order)(z).
class JetFunction
{
public:
  /// Fills out[k] = f^(k)(z) for k < out.size().
  using Kernel = std::function<void(Complex z, std::span<Complex> out)>;

  JetFunction() = default;
  /// max_order < 0 means every derivative order is available.
  explicit JetFunction(Kernel kernel, int max_order = -1)
    : kernel_(std::move(kernel)), max_order_(max_order)
  {
  }

  [[nodiscard]] int max_order() const { return max_order_; }
  [[nodiscard]] bool provides(int order) const { return max_order_ < 0 || order <= max_order_; }

  /// Throws Error if `order` exceeds max_order().
  [[nodiscard]] std::vector<Complex> eval(Complex z, int order) const;
  void eval_into(Complex z, std::span<Complex> out) const;
  [[nodiscard]] Complex operator()(Complex z) const;

private:
  Kernel kernel_;
  int max_order_ = -1;
};

namespace jets
{

/// z -> exp(alpha z).
JetFunction exp(Complex alpha = 1.0);
/// A polynomial (derivatives beyond the degree are zero).
JetFunction polynomial(Polynomial p);
/// z -> 1 / (z - a).
JetFunction simple_pole(Complex a);
/// z -> v(z) f(z) with derivatives from the Leibniz rule; v given by poles.
JetFunction times_denominator(const PoleList &poles, JetFunction f);
/// Values only; asking for a derivative is an error.
JetFunction values_only(std::function<Complex(Complex)> f);

}  // namespace jets

/// Newton form p(z) = c_0 + c_1 (z - x_0) + ... + c_{m-1} (z - x_0)...(z - x_{m-2})
/// over centers x_0..x_{m-1}.
struct NewtonForm
{
  NodeList nodes;
  std::vector<Complex> coefficients;

  [[nodiscard]] Complex operator()(Complex z) const;
  /// Taylor coefficients p^(j)(z)/j!, j = 0..order.
  [[nodiscard]] std::vector<Complex> taylor(Complex z, std::size_t order) const;
  [[nodiscard]] Polynomial to_polynomial() const;
};

/// r = u / v with u in Newton form and v(z) = prod_k (z - pole_k)^{m_k}.
struct RationalInterpolant
{
  NewtonForm numerator;
  PoleList poles;
  NodeList nodes;

  [[nodiscard]] Complex operator()(Complex z) const;
  [[nodiscard]] Complex denominator(Complex z) const { return denominator_value(poles, z); }
  /// r^(j)(z)/j!, j = 0..order (power-series quotient).
  [[nodiscard]] std::vector<Complex> taylor(Complex z, std::size_t order) const;
};

/// f[z_1], f[z_1,z_2], ..., f[z_1..z_N] by the recurrence; confluent entries
/// use f^(k)(z)/k!.
std::vector<Complex> divided_differences(const JetFunction &f, const NodeList &nodes);

/// Iterated simplex integral of f^(N-1) (Gauss-Legendre per level); N <= 4.
Complex genocchi_hermite_oracle(const JetFunction &f, const NodeList &nodes,
                                std::size_t quad_points);

/// (1 / 2 pi i) \oint f / Omega over |lambda - center| = radius, trapezoid rule.
Complex contour_divdiff_oracle(const JetFunction &f, const NodeList &nodes, Complex center,
                               double radius, std::size_t quad_points);

/// Gauss-Legendre nodes and weights on [0, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(std::size_t n);

/// Polynomial of degree <= N - 1 matching f and its derivatives at the nodes.
NewtonForm hermite_interpolate(const JetFunction &f, const NodeList &nodes);

/// Unique u with deg u <= N - 1 such that u / v interpolates f, where
/// v = prod (z - pole)^m. u interpolates the jet of v f.
RationalInterpolant rational_interpolate_fixed_denominator(const JetFunction &f,
                                                           const NodeList &nodes,
                                                           const PoleList &poles);

/// Omega(z) / v(z) * (v f)[z_1..z_N, z], which equals f(z) - r(z).
Complex remainder_scalar(const JetFunction &f, const RationalInterpolant &r, Complex z);

/// Sample point at which the denominator of a linearized fit vanishes.
class UnattainablePointError : public Error
{
public:
  UnattainablePointError(std::size_t index, const std::string &msg) : Error(msg), index_(index) {}
  [[nodiscard]] std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

struct RationalFit
{
  /// Coefficients in powers of z; denominator has unit 2-norm and a
  /// positive real leading entry.
  Polynomial numerator;
  Polynomial denominator;
  std::vector<Complex> poles;
  RationalInterpolant interpolant;
  double max_residual = 0.0;
};

/// [L/M] rational function through L+M+1 samples from the null vector of the
/// linearized conditions u(z_i) - f_i v(z_i) = 0. Conjugate-symmetric samples
/// give a real null vector, so the poles come in conjugate pairs.
RationalFit linearized_rational_fit(std::span<const std::pair<Complex, Complex>> samples,
                                    std::size_t L, std::size_t M);

/// [L/M] Pade approximant of f at z0 (all L+M+1 conditions confluent at z0),
/// denominator from the linearized Taylor conditions.
RationalInterpolant pade_approximant(const JetFunction &f, Complex z0, std::size_t L,
                                     std::size_t M);

/// numerator / v = quotient + sum_k sum_{j=1}^{m_k} residues[k][j-1] / (z - pole_k)^j.
struct PartialFractions
{
  Polynomial quotient;
  PoleList poles;
  std::vector<std::vector<Complex>> residues;

  [[nodiscard]] Complex operator()(Complex z) const;
  /// (quotient(A) + sum residues (A - pole I)^{-j}) X, by repeated LU solves
  /// against each shift. Throws PoleSpectrumError if a shift is singular.
  [[nodiscard]] ComplexMatrix apply(const ComplexMatrix &A, const ComplexMatrix &X) const;
};

PartialFractions partial_fractions(const Polynomial &numerator, const PoleList &poles);

}  // namespace ratmat
