// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ratmat
{

DerivativeKernel exp_kernel(const PoleList &poles, std::size_t N, double t)
{
  VExpDerivative vd{merge_poles(poles), t, N};
  return [vd = std::move(vd)](Complex z) { return vexp_derivative_scaled(vd, z); };
}

DerivativeKernel jet_kernel(const PoleList &poles, std::size_t N, JetFunction f)
{
  if (!f.provides(static_cast<int>(N)))
  {
    throw Error("jet_kernel: f does not provide derivatives of order N");
  }
  JetFunction vf = jets::times_denominator(merge_poles(poles), std::move(f));
  double fact = 1.0;
  for (std::size_t k = 2; k <= N; k++)
  {
    fact *= static_cast<double>(k);
  }
  return [vf = std::move(vf), N, fact](Complex z)
  { return vf.eval(z, static_cast<int>(N)).back() / fact; };
}

std::vector<double> uniform_grid(std::size_t n)
{
  if (n == 0)
  {
    throw Error("uniform_grid: need at least one point");
  }
  std::vector<double> s(n, 0.0);
  for (std::size_t l = 1; l < n; l++)
  {
    s[l] = static_cast<double>(l) / static_cast<double>(n - 1);
  }
  return s;
}

// ---------------------------------------------------------------------------
// BoundQuery

BoundQuery BoundQuery::standard(NodeList nodes, PoleList poles, DerivativeKernel g,
                                std::size_t n_s, std::size_t n_mu)
{
  if (nodes.empty())
  {
    throw Error("BoundQuery: empty node list");
  }
  std::vector<Complex> distinct;
  for (const auto &z : nodes.distinct())
  {
    distinct.push_back(z.value);
  }
  ConvexPolygon hull = convex_hull(distinct);
  std::vector<Complex> mu = hull_boundary_samples(hull, std::max(n_mu, hull.size()));
  BoundQuery q{std::move(nodes), merge_poles(poles), std::move(g), std::move(hull),
               uniform_grid(n_s), std::move(mu)};
  q.validate();
  return q;
}

void BoundQuery::validate() const
{
  if (nodes.empty())
  {
    throw Error("BoundQuery: empty node list");
  }
  if (!g)
  {
    throw Error("BoundQuery: missing derivative kernel");
  }
  if (s_grid.empty() || mu_samples.empty())
  {
    throw Error("BoundQuery: empty s grid or mu samples");
  }
  bool has0 = false, has1 = false;
  for (const double s : s_grid)
  {
    if (!(s >= 0.0 && s <= 1.0))
    {
      throw Error("BoundQuery: s values must lie in [0, 1]");
    }
    has0 = has0 || s == 0.0;
    has1 = has1 || s == 1.0;
  }
  if (!has0 || !has1)
  {
    throw Error("BoundQuery: s grid must contain 0 and 1");
  }
  double scale = 1.0;
  for (const Complex z : hull.vertices())
  {
    scale = std::max(scale, std::abs(z));
  }
  for (const Complex mu : mu_samples)
  {
    if (hull.distance(mu) > 1e-9 * scale)
    {
      throw Error("BoundQuery: mu sample outside the hull");
    }
  }
  for (const auto &z : nodes.distinct())
  {
    if (std::abs(denominator_value(poles, z.value)) <= 1e-12 * denominator_scale(poles, z.value))
    {
      throw Error("BoundQuery: denominator vanishes at node");
    }
  }
}

Complex BoundQuery::omega_over_v(Complex z) const
{
  const Complex v = denominator_value(poles, z);
  if (std::abs(v) <= 1e-12 * denominator_scale(poles, z))
  {
    std::ostringstream msg;
    msg << "pole meets spectrum: v vanishes at (" << z.real() << ", " << z.imag() << ")";
    throw PoleSpectrumError(msg.str());
  }
  return nodes.omega(z) / v;
}

// ---------------------------------------------------------------------------
// Core matrix and grid maxima

DiagonalizedMatrix::DiagonalizedMatrix(EigenFactorization f)
  : A(f.reconstruct()), fac(std::move(f))
{
}

DiagonalizedMatrix::DiagonalizedMatrix(ComplexMatrix a, EigenFactorization f)
  : A(std::move(a)), fac(std::move(f))
{
  if (A.rows() != A.cols() || static_cast<std::size_t>(A.rows()) != fac.order())
  {
    throw Error("DiagonalizedMatrix: A and its factorization differ in order");
  }
}

namespace
{

ComplexVector omega_over_v_at_spectrum(const BoundQuery &q, const DiagonalizedMatrix &M)
{
  const ComplexVector &ev = M.fac.eigenvalues();
  ComplexVector w(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); i++)
  {
    w(i) = q.omega_over_v(ev(i));
  }
  return w;
}

PartialFractions omega_fractions(const BoundQuery &q)
{
  return partial_fractions(q.nodes.omega_polynomial(), q.poles);
}

// Scans values[mu][s] with mu outer, s inner; the first maximum wins.
BoundResult collect(const BoundQuery &q, const std::vector<std::vector<double>> &values)
{
  BoundResult r;
  r.n_s = q.s_grid.size();
  r.n_mu = q.mu_samples.size();
  r.samples.reserve(r.n_s * r.n_mu);
  bool first = true;
  for (std::size_t k = 0; k < r.n_mu; k++)
  {
    for (std::size_t l = 0; l < r.n_s; l++)
    {
      const double v = values[l][k];
      if (!std::isfinite(v))
      {
        throw Error("bound: non-finite grid sample");
      }
      r.samples.push_back(v);
      if (first || v > r.value)
      {
        r.value = v;
        r.argmax_s = q.s_grid[l];
        r.argmax_mu = q.mu_samples[k];
        first = false;
      }
    }
  }
  return r;
}

// G(i, k) = g((1 - s) mu_k + s nu_i) * weights(i).
ComplexMatrix kernel_block(const BoundQuery &q, const ComplexVector &ev,
                           const ComplexVector &weights, double s)
{
  const auto n = ev.size();
  const auto m = static_cast<Eigen::Index>(q.mu_samples.size());
  ComplexMatrix G(n, m);
  for (Eigen::Index k = 0; k < m; k++)
  {
    const Complex base = (1.0 - s) * q.mu_samples[static_cast<std::size_t>(k)];
    for (Eigen::Index i = 0; i < n; i++)
    {
      G(i, k) = q.g(base + s * ev(i)) * weights(i);
    }
  }
  return G;
}

void check_vector(const DiagonalizedMatrix &M, const ComplexVector &x, const char *what)
{
  if (x.size() != M.A.rows())
  {
    std::ostringstream msg;
    msg << "bound: " << what << " has the wrong dimension";
    throw Error(msg.str());
  }
}

// Coefficients c with core b = S (g-weights * c) for every grid point.
ComplexVector spectral_coefficients(const BoundQuery &q, const DiagonalizedMatrix &M,
                                    const ComplexVector &b, CoreRoute route)
{
  if (route == CoreRoute::Diagonal)
  {
    const ComplexVector w = omega_over_v_at_spectrum(q, M);
    return w.cwiseProduct(M.fac.S_inv() * b);
  }
  // v(A) must be nonsingular on the spectrum even though the solves detect it.
  (void)omega_over_v_at_spectrum(q, M);
  const ComplexVector z = omega_fractions(q).apply(M.A, b);
  return M.fac.S_inv() * z;
}

}  // namespace

ComplexMatrix bound_core_matrix(const BoundQuery &q, const DiagonalizedMatrix &M, double s,
                                Complex mu, CoreRoute route)
{
  const auto g_at = [&](Complex lambda) { return q.g((1.0 - s) * mu + s * lambda); };
  if (route == CoreRoute::Diagonal)
  {
    const ComplexVector w = omega_over_v_at_spectrum(q, M);
    const ComplexVector &ev = M.fac.eigenvalues();
    ComplexVector h(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); i++)
    {
      h(i) = w(i) * g_at(ev(i));
    }
    return M.fac.S() * h.asDiagonal() * M.fac.S_inv();
  }
  (void)omega_over_v_at_spectrum(q, M);
  const ComplexMatrix ov = omega_fractions(q).apply(M.A, ComplexMatrix::Identity(M.A.rows(), M.A.cols()));
  return ov * matfun_via_factorization(M.fac, g_at);
}

BoundResult bound_vector(const BoundQuery &q, const DiagonalizedMatrix &M, const ComplexVector &b,
                         CoreRoute route)
{
  q.validate();
  check_vector(M, b, "b");
  const ComplexVector c = spectral_coefficients(q, M, b, route);
  std::vector<std::vector<double>> values(q.s_grid.size());
  for (std::size_t l = 0; l < q.s_grid.size(); l++)
  {
    const ComplexMatrix Y = M.fac.S() * kernel_block(q, M.fac.eigenvalues(), c, q.s_grid[l]);
    values[l].resize(q.mu_samples.size());
    for (std::size_t k = 0; k < q.mu_samples.size(); k++)
    {
      values[l][k] = Y.col(static_cast<Eigen::Index>(k)).norm();
    }
  }
  return collect(q, values);
}

BoundResult bound_bilinear(const BoundQuery &q, const DiagonalizedMatrix &M,
                           const ComplexVector &b, const ComplexVector &d, CoreRoute route)
{
  q.validate();
  check_vector(M, b, "b");
  check_vector(M, d, "d");
  const ComplexVector c = spectral_coefficients(q, M, b, route);
  const ComplexVector e = M.fac.S().adjoint() * d;
  std::vector<std::vector<double>> values(q.s_grid.size());
  for (std::size_t l = 0; l < q.s_grid.size(); l++)
  {
    const ComplexMatrix y = e.adjoint() * kernel_block(q, M.fac.eigenvalues(), c, q.s_grid[l]);
    values[l].resize(q.mu_samples.size());
    for (std::size_t k = 0; k < q.mu_samples.size(); k++)
    {
      values[l][k] = std::abs(y(0, static_cast<Eigen::Index>(k)));
    }
  }
  return collect(q, values);
}

BoundResult bound_matrix_norm(const BoundQuery &q, const DiagonalizedMatrix &M, CoreRoute route)
{
  q.validate();
  std::vector<std::vector<double>> values(q.s_grid.size(),
                                          std::vector<double>(q.mu_samples.size()));
  for (std::size_t k = 0; k < q.mu_samples.size(); k++)
  {
    for (std::size_t l = 0; l < q.s_grid.size(); l++)
    {
      const ComplexMatrix C = bound_core_matrix(q, M, q.s_grid[l], q.mu_samples[k], route);
      const ComplexMatrix gram = C.adjoint() * C;
      values[l][k] = std::sqrt(std::max(0.0, eig_extreme_hermitian(gram).q_max));
    }
  }
  return collect(q, values);
}

PadeBound bound_pade(const DiagonalizedMatrix &M, Complex z0, std::size_t L, std::size_t Mdeg,
                     const JetFunction &f, std::size_t n_s)
{
  const std::size_t N = L + Mdeg + 1;
  RationalInterpolant r = pade_approximant(f, z0, L, Mdeg);
  const PoleList poles = merge_poles(r.poles);
  const std::vector<Complex> z(N, z0);
  BoundQuery q = BoundQuery::standard(NodeList(z), poles, jet_kernel(poles, N, f), n_s, 1);
  BoundResult bound = bound_matrix_norm(q, M);
  return PadeBound{std::move(r), std::move(bound)};
}

// ---------------------------------------------------------------------------
// Numerical range

double log_norm(const ComplexMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error("log_norm: matrix must be square");
  }
  const ComplexMatrix H = 0.5 * (A + A.adjoint());
  return eig_extreme_hermitian(H).q_max;
}

namespace
{

// Keeps the part of a convex polygon where Re(conj(u) z) <= c.
std::vector<Complex> clip(const std::vector<Complex> &poly, Complex u, double c)
{
  std::vector<Complex> out;
  const std::size_t n = poly.size();
  const auto level = [&](Complex z) { return (std::conj(u) * z).real() - c; };
  for (std::size_t i = 0; i < n; i++)
  {
    const Complex p = poly[i];
    const Complex q = poly[(i + 1) % n];
    const double lp = level(p);
    const double lq = level(q);
    if (lp <= 0.0)
    {
      out.push_back(p);
    }
    if ((lp < 0.0 && lq > 0.0) || (lp > 0.0 && lq < 0.0))
    {
      out.push_back(p + (q - p) * (lp / (lp - lq)));
    }
  }
  return out;
}

}  // namespace

ConvexPolygon numerical_range_box(const ComplexMatrix &A, const std::vector<double> &angles)
{
  if (A.rows() != A.cols() || A.rows() == 0)
  {
    throw Error("numerical_range_box: matrix must be square and nonempty");
  }
  if (angles.empty())
  {
    throw Error("numerical_range_box: need at least one angle");
  }
  const double R = 2.0 * A.norm();
  if (R == 0.0)
  {
    return ConvexPolygon({Complex(0.0)});
  }
  const double tol = 1e-12 * max_abs(A);
  std::vector<Complex> poly{{-R, -R}, {R, -R}, {R, R}, {-R, R}};
  for (const double phi : angles)
  {
    const Complex rot = std::polar(1.0, -phi);
    const ComplexMatrix H = 0.5 * (rot * A + std::conj(rot) * A.adjoint());
    const auto ext = eig_extreme_hermitian(H);
    // Re(e^{-i phi} z) = Re(conj(u) z) with u = e^{i phi}.
    const Complex u = std::conj(rot);
    poly = clip(poly, u, ext.q_max + tol);
    poly = clip(poly, -u, -(ext.q_min - tol));
    if (poly.empty())
    {
      throw Error("numerical_range_box: internal error, empty strip intersection");
    }
  }
  return convex_hull(poly);
}

ConvexPolygon numerical_range_box(const ComplexMatrix &A)
{
  return numerical_range_box(A, {0.0, -std::numbers::pi / 2});
}

double crouzeix_scalar_bound(const BoundQuery &q, const ConvexPolygon &psi, double b_norm,
                             double C, std::size_t n_lambda)
{
  q.validate();
  if (!(C > 0.0) || !(b_norm >= 0.0))
  {
    throw Error("crouzeix_scalar_bound: C must be positive and b_norm nonnegative");
  }
  const auto lambdas = hull_boundary_samples(psi, std::max(n_lambda, psi.size()));
  double best = 0.0;
  for (const Complex lambda : lambdas)
  {
    const Complex w = q.omega_over_v(lambda);
    for (const Complex mu : q.mu_samples)
    {
      for (const double s : q.s_grid)
      {
        best = std::max(best, std::abs(w * q.g((1.0 - s) * mu + s * lambda)));
      }
    }
  }
  return C * best * b_norm;
}

}  // namespace ratmat
