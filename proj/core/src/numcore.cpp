// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/numcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace ratmat
{

void require_finite(const ComplexMatrix &M, const std::string &what)
{
  for (Eigen::Index j = 0; j < M.cols(); j++)
  {
    for (Eigen::Index i = 0; i < M.rows(); i++)
    {
      if (!std::isfinite(M(i, j).real()) || !std::isfinite(M(i, j).imag()))
      {
        std::ostringstream msg;
        msg << what << ": non-finite entry at (" << i << ", " << j << ")";
        throw Error(msg.str());
      }
    }
  }
}

double max_abs(const ComplexMatrix &M)
{
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

double lu_rcond(const Eigen::PartialPivLU<ComplexMatrix> &lu)
{
  const auto pivots = lu.matrixLU().diagonal();
  for (Eigen::Index i = 0; i < pivots.size(); i++)
  {
    if (pivots(i) == 0.0)
    {
      return 0.0;
    }
  }
  const double rc = lu.rcond();
  return std::isfinite(rc) ? rc : 0.0;
}

// ---------------------------------------------------------------------------

EigenFactorization::EigenFactorization(ComplexMatrix S, ComplexVector eigenvalues)
  : S_(std::move(S)), eigenvalues_(std::move(eigenvalues))
{
  if (S_.rows() != S_.cols() || S_.rows() != eigenvalues_.size())
  {
    throw Error("EigenFactorization: S must be square and match the eigenvalue count");
  }
  require_finite(S_, "EigenFactorization S");
  require_finite(eigenvalues_, "EigenFactorization eigenvalues");
  Eigen::PartialPivLU<ComplexMatrix> lu(S_);
  S_inv_ = lu.inverse();
  check_inverse();
}

EigenFactorization::EigenFactorization(ComplexMatrix S, ComplexVector eigenvalues,
                                       ComplexMatrix S_inv)
  : S_(std::move(S)), eigenvalues_(std::move(eigenvalues)), S_inv_(std::move(S_inv))
{
  if (S_.rows() != S_.cols() || S_.rows() != eigenvalues_.size() ||
      S_inv_.rows() != S_.rows() || S_inv_.cols() != S_.cols())
  {
    throw Error("EigenFactorization: inconsistent dimensions");
  }
  require_finite(S_, "EigenFactorization S");
  require_finite(eigenvalues_, "EigenFactorization eigenvalues");
  check_inverse();
}

void EigenFactorization::check_inverse()
{
  require_finite(S_inv_, "EigenFactorization S^-1");
  const auto n = S_.rows();
  // The residual of a backward-stable inverse grows like eps * cond(S).
  const double cond = S_.cwiseAbs().rowwise().sum().maxCoeff() *
                      S_inv_.cwiseAbs().rowwise().sum().maxCoeff();
  const double allowance = 1e-8 * std::max(1.0, max_abs(S_)) * std::max(1.0, cond * 1e-6);
  const double residual = n == 0 ? 0.0 : max_abs(S_ * S_inv_ - ComplexMatrix::Identity(n, n));
  if (!(residual <= allowance))
  {
    std::ostringstream msg;
    msg << "EigenFactorization: ||S S^-1 - I||_max = " << residual
        << " exceeds allowance " << allowance;
    throw Error(msg.str());
  }
  usable_ = true;
}

EigenFactorization EigenFactorization::eigenvalues_only(ComplexVector eigenvalues)
{
  EigenFactorization fac;
  fac.eigenvalues_ = std::move(eigenvalues);
  fac.usable_ = false;
  return fac;
}

const ComplexMatrix &EigenFactorization::S() const
{
  if (!usable_)
  {
    throw Error("EigenFactorization: eigenvector matrix is unusable (defective or ill-conditioned)");
  }
  return S_;
}

const ComplexMatrix &EigenFactorization::S_inv() const
{
  if (!usable_)
  {
    throw Error("EigenFactorization: eigenvector matrix is unusable (defective or ill-conditioned)");
  }
  return S_inv_;
}

ComplexMatrix EigenFactorization::reconstruct() const
{
  return S() * eigenvalues_.asDiagonal() * S_inv();
}

// ---------------------------------------------------------------------------

OrthonormalBasis mgs_orthonormalize(std::span<const ComplexVector> cols, double dep_tol)
{
  if (cols.empty())
  {
    throw Error("mgs_orthonormalize: empty input");
  }
  if (!(dep_tol > 0.0))
  {
    throw Error("mgs_orthonormalize: dep_tol must be positive");
  }
  const auto dim = cols.front().size();
  std::vector<ComplexVector> q;
  OrthonormalBasis out;
  for (std::size_t k = 0; k < cols.size(); k++)
  {
    if (cols[k].size() != dim)
    {
      throw Error("mgs_orthonormalize: vectors have different dimensions");
    }
    const double norm0 = cols[k].norm();
    ComplexVector w = cols[k];
    for (int pass = 0; pass < 2; pass++)
    {
      for (const auto &qi : q)
      {
        w -= qi.dot(w) * qi;
      }
    }
    const double res = w.norm();
    if (norm0 == 0.0 || res <= dep_tol * norm0)
    {
      continue;
    }
    q.push_back(w / res);
    out.kept.push_back(k);
  }
  if (q.empty())
  {
    throw Error("mgs_orthonormalize: rank zero");
  }
  out.Q.resize(dim, static_cast<Eigen::Index>(q.size()));
  for (std::size_t j = 0; j < q.size(); j++)
  {
    out.Q.col(static_cast<Eigen::Index>(j)) = q[j];
  }
  return out;
}

EigenFactorization eig_small(const ComplexMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error("eig_small: matrix is not square");
  }
  if (static_cast<std::size_t>(A.rows()) > kEigSmallMaxOrder)
  {
    throw Error("eig_small: order exceeds 64");
  }
  require_finite(A, "eig_small");
  if (A.rows() == 0)
  {
    return EigenFactorization(ComplexMatrix(0, 0), ComplexVector(0));
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(A, true);
  if (solver.info() != Eigen::Success)
  {
    throw Error("eig_small: QR iteration did not converge");
  }
  ComplexVector eigenvalues = solver.eigenvalues();
  ComplexMatrix S = solver.eigenvectors();
  Eigen::PartialPivLU<ComplexMatrix> lu(S);
  if (!(lu_rcond(lu) >= 1e-13))
  {
    return EigenFactorization::eigenvalues_only(std::move(eigenvalues));
  }
  try
  {
    return EigenFactorization(std::move(S), eigenvalues, lu.inverse());
  }
  catch (const Error &)
  {
    return EigenFactorization::eigenvalues_only(std::move(eigenvalues));
  }
}

HermitianExtremes eig_extreme_hermitian(const ComplexMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error("eig_extreme_hermitian: matrix is not square");
  }
  if (A.rows() == 0)
  {
    throw Error("eig_extreme_hermitian: empty matrix");
  }
  const double scale = max_abs(A);
  if (max_abs(A - A.adjoint()) > 1e-10 * scale)
  {
    throw Error("eig_extreme_hermitian: matrix is not Hermitian");
  }
  const ComplexMatrix H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(H, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
  {
    throw Error("eig_extreme_hermitian: eigensolver did not converge");
  }
  const auto &ev = solver.eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

std::vector<Complex> poly_roots(std::span<const Complex> coeffs)
{
  if (coeffs.size() < 2)
  {
    throw Error("poly_roots: degree must be at least 1");
  }
  const std::size_t d = coeffs.size() - 1;
  const Complex lead = coeffs[d];
  if (lead == 0.0)
  {
    throw Error("poly_roots: leading coefficient is zero");
  }
  if (d > kEigSmallMaxOrder)
  {
    throw Error("poly_roots: degree exceeds 64");
  }
  const auto n = static_cast<Eigen::Index>(d);
  ComplexMatrix C = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; i++)
  {
    C(i, i - 1) = 1.0;
  }
  for (Eigen::Index i = 0; i < n; i++)
  {
    C(i, n - 1) = -coeffs[static_cast<std::size_t>(i)] / lead;
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(C, false);
  if (solver.info() != Eigen::Success)
  {
    throw Error("poly_roots: companion eigensolver did not converge");
  }
  const auto &ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

// ---------------------------------------------------------------------------

double cross(Complex a, Complex b, Complex c)
{
  const Complex u = b - a;
  const Complex v = c - a;
  return u.real() * v.imag() - u.imag() * v.real();
}

namespace
{

double segment_distance(Complex z, Complex a, Complex b)
{
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0)
  {
    return std::abs(z - a);
  }
  const double t = std::clamp(((z - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(z - (a + t * ab));
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Complex> vertices) : vertices_(std::move(vertices))
{
  if (vertices_.empty())
  {
    throw Error("ConvexPolygon: no vertices");
  }
  for (const auto &v : vertices_)
  {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    {
      throw Error("ConvexPolygon: non-finite vertex");
    }
  }
  const std::size_t n = vertices_.size();
  if (n >= 3)
  {
    double scale = 0.0;
    for (const auto &v : vertices_)
    {
      scale = std::max(scale, std::abs(v - vertices_[0]));
    }
    for (std::size_t i = 0; i < n; i++)
    {
      const double c = cross(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]);
      if (c < -1e-12 * scale * scale)
      {
        throw Error("ConvexPolygon: vertices are not a convex counterclockwise chain");
      }
    }
  }
}

double ConvexPolygon::perimeter() const
{
  const std::size_t n = vertices_.size();
  if (n == 1)
  {
    return 0.0;
  }
  if (n == 2)
  {
    return 2.0 * std::abs(vertices_[1] - vertices_[0]);
  }
  double p = 0.0;
  for (std::size_t i = 0; i < n; i++)
  {
    p += std::abs(vertices_[(i + 1) % n] - vertices_[i]);
  }
  return p;
}

double ConvexPolygon::area() const
{
  const std::size_t n = vertices_.size();
  double a = 0.0;
  for (std::size_t i = 1; i + 1 < n; i++)
  {
    a += cross(vertices_[0], vertices_[i], vertices_[i + 1]);
  }
  return 0.5 * a;
}

double ConvexPolygon::distance(Complex z) const
{
  const std::size_t n = vertices_.size();
  if (n == 1)
  {
    return std::abs(z - vertices_[0]);
  }
  if (n == 2)
  {
    return segment_distance(z, vertices_[0], vertices_[1]);
  }
  bool inside = true;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; i++)
  {
    const Complex a = vertices_[i];
    const Complex b = vertices_[(i + 1) % n];
    if (cross(a, b, z) < 0.0)
    {
      inside = false;
    }
    d = std::min(d, segment_distance(z, a, b));
  }
  return inside ? 0.0 : d;
}

bool ConvexPolygon::contains(Complex z, double slack) const
{
  return distance(z) <= slack;
}

ConvexPolygon convex_hull(std::span<const Complex> points)
{
  if (points.empty())
  {
    throw Error("convex_hull: no points");
  }
  std::vector<Complex> p(points.begin(), points.end());
  auto less = [](Complex a, Complex b)
  { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); };
  std::sort(p.begin(), p.end(), less);
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() == 1)
  {
    return ConvexPolygon({p[0]});
  }
  std::vector<Complex> hull(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); i++)
  {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0)
    {
      k--;
    }
    hull[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, lower = k + 1; i-- > 0;)
  {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p[i]) <= 0.0)
    {
      k--;
    }
    hull[k++] = p[i];
  }
  hull.resize(k - 1);
  return ConvexPolygon(std::move(hull));
}

std::vector<Complex> hull_boundary_samples(const ConvexPolygon &poly, std::size_t k)
{
  const auto &v = poly.vertices();
  if (v.size() == 1)
  {
    return {v[0]};
  }
  if (k < v.size())
  {
    throw Error("hull_boundary_samples: k is smaller than the vertex count");
  }
  // A segment is an open chain (k - 1 pieces); a polygon is closed (k pieces).
  const bool closed = v.size() >= 3;
  const std::size_t edges = closed ? v.size() : 1;
  const std::size_t pieces = closed ? k : k - 1;
  std::vector<double> len(edges);
  for (std::size_t e = 0; e < edges; e++)
  {
    len[e] = std::abs(v[(e + 1) % v.size()] - v[e]);
  }
  std::vector<std::size_t> count(edges, 1);
  for (std::size_t total = edges; total < pieces; total++)
  {
    std::size_t best = 0;
    for (std::size_t e = 1; e < edges; e++)
    {
      if (len[e] / static_cast<double>(count[e]) > len[best] / static_cast<double>(count[best]))
      {
        best = e;
      }
    }
    count[best]++;
  }
  std::vector<Complex> out;
  out.reserve(k);
  for (std::size_t e = 0; e < edges; e++)
  {
    const Complex a = v[e];
    const Complex b = v[(e + 1) % v.size()];
    for (std::size_t j = 0; j < count[e]; j++)
    {
      out.push_back(a + (b - a) * (static_cast<double>(j) / static_cast<double>(count[e])));
    }
  }
  if (!closed)
  {
    out.push_back(v[1]);
  }
  return out;
}

}  // namespace ratmat
