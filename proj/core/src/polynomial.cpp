// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace ratmat
{

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs))
{
  if (coeffs_.empty())
  {
    coeffs_.push_back(0.0);
  }
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots)
{
  std::vector<Complex> c{1.0};
  for (const Complex r : roots)
  {
    c.push_back(0.0);
    for (std::size_t j = c.size() - 1; j > 0; j--)
    {
      c[j] = c[j - 1] - r * c[j];
    }
    c[0] *= -r;
  }
  return Polynomial(std::move(c));
}

std::size_t Polynomial::degree() const
{
  for (std::size_t j = coeffs_.size(); j-- > 1;)
  {
    if (coeffs_[j] != 0.0)
    {
      return j;
    }
  }
  return 0;
}

Complex Polynomial::operator()(Complex z) const
{
  Complex p = 0.0;
  for (std::size_t j = coeffs_.size(); j-- > 0;)
  {
    p = p * z + coeffs_[j];
  }
  return p;
}

Polynomial Polynomial::derivative() const
{
  if (coeffs_.size() <= 1)
  {
    return Polynomial();
  }
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); j++)
  {
    d[j - 1] = static_cast<double>(j) * coeffs_[j];
  }
  return Polynomial(std::move(d));
}

std::vector<Complex> Polynomial::taylor_at(Complex z0) const
{
  // Repeated synthetic division by (z - z0).
  std::vector<Complex> a = coeffs_;
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; k++)
  {
    for (std::size_t j = n - 1; j > k; j--)
    {
      a[j - 1] += z0 * a[j];
    }
  }
  return a;
}

ComplexMatrix Polynomial::operator()(const ComplexMatrix &A) const
{
  const auto n = A.rows();
  return apply(A, ComplexMatrix::Identity(n, n));
}

ComplexMatrix Polynomial::apply(const ComplexMatrix &A, const ComplexMatrix &X) const
{
  ComplexMatrix P = coeffs_.back() * X;
  for (std::size_t j = coeffs_.size() - 1; j-- > 0;)
  {
    P = A * P + coeffs_[j] * X;
  }
  return P;
}

Polynomial operator+(const Polynomial &a, const Polynomial &b)
{
  std::vector<Complex> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t j = 0; j < a.coeffs_.size(); j++)
  {
    c[j] += a.coeffs_[j];
  }
  for (std::size_t j = 0; j < b.coeffs_.size(); j++)
  {
    c[j] += b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial &a, const Polynomial &b)
{
  return a + Complex(-1.0) * b;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
  std::vector<Complex> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); i++)
  {
    for (std::size_t j = 0; j < b.coeffs_.size(); j++)
    {
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(Complex s, const Polynomial &p)
{
  std::vector<Complex> c = p.coeffs_;
  for (auto &x : c)
  {
    x *= s;
  }
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial &divisor) const
{
  const std::size_t dd = divisor.degree();
  const Complex lead = divisor.coeffs_[dd];
  if (lead == 0.0)
  {
    throw Error("Polynomial::divmod: division by the zero polynomial");
  }
  const std::size_t dn = degree();
  if (dn < dd)
  {
    return {Polynomial(), *this};
  }
  std::vector<Complex> r(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(dn + 1));
  std::vector<Complex> q(dn - dd + 1, 0.0);
  for (std::size_t k = dn - dd + 1; k-- > 0;)
  {
    const Complex c = r[k + dd] / lead;
    q[k] = c;
    for (std::size_t j = 0; j <= dd; j++)
    {
      r[k + j] -= c * divisor.coeffs_[j];
    }
  }
  r.resize(std::max<std::size_t>(dd, 1));
  if (dd == 0)
  {
    r[0] = 0.0;
  }
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

// ---------------------------------------------------------------------------

std::size_t total_multiplicity(const PoleList &poles)
{
  std::size_t m = 0;
  for (const auto &p : poles)
  {
    m += static_cast<std::size_t>(p.multiplicity);
  }
  return m;
}

Complex denominator_value(const PoleList &poles, Complex z)
{
  Complex v = 1.0;
  for (const auto &p : poles)
  {
    for (int j = 0; j < p.multiplicity; j++)
    {
      v *= z - p.value;
    }
  }
  return v;
}

std::vector<Complex> denominator_taylor(const PoleList &poles, Complex z, std::size_t order)
{
  std::vector<Complex> c(order + 1, 0.0);
  c[0] = 1.0;
  std::size_t deg = 0;
  for (const auto &p : poles)
  {
    const Complex shift = z - p.value;
    for (int m = 0; m < p.multiplicity; m++)
    {
      // multiply by (h + shift)
      deg = std::min(deg + 1, order);
      for (std::size_t j = deg; j > 0; j--)
      {
        c[j] = c[j] * shift + c[j - 1];
      }
      c[0] *= shift;
    }
  }
  return c;
}

double denominator_scale(const PoleList &poles, Complex z)
{
  double s = 1.0;
  for (const auto &p : poles)
  {
    s *= std::pow(std::abs(z) + std::abs(p.value), p.multiplicity);
  }
  return s;
}

Polynomial denominator_polynomial(const PoleList &poles)
{
  std::vector<Complex> roots;
  for (const auto &p : poles)
  {
    roots.insert(roots.end(), static_cast<std::size_t>(p.multiplicity), p.value);
  }
  return Polynomial::from_roots(roots);
}

PoleList cluster_points(std::span<const Complex> points, double rel_tol)
{
  PoleList out;
  for (const Complex z : points)
  {
    bool merged = false;
    for (auto &c : out)
    {
      const double scale = std::max({1.0, std::abs(z), std::abs(c.value)});
      if (std::abs(z - c.value) <= rel_tol * scale)
      {
        c.multiplicity++;
        merged = true;
        break;
      }
    }
    if (!merged)
    {
      out.push_back({z, 1});
    }
  }
  return out;
}

std::vector<Complex> series_mul(std::span<const Complex> a, std::span<const Complex> b,
                                std::size_t order)
{
  std::vector<Complex> c(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; i++)
  {
    for (std::size_t j = 0; j < b.size() && i + j <= order; j++)
    {
      c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

std::vector<Complex> series_reciprocal(std::span<const Complex> a, std::size_t order)
{
  if (a.empty() || a[0] == 0.0)
  {
    throw Error("series_reciprocal: constant term is zero");
  }
  std::vector<Complex> r(order + 1, 0.0);
  r[0] = 1.0 / a[0];
  for (std::size_t k = 1; k <= order; k++)
  {
    Complex s = 0.0;
    for (std::size_t j = 1; j <= k && j < a.size(); j++)
    {
      s += a[j] * r[k - j];
    }
    r[k] = -s / a[0];
  }
  return r;
}

}  // namespace ratmat
