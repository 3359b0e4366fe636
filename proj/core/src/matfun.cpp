// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/matfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ratmat
{

namespace
{

ComplexVector eval_at_eigenvalues(const EigenFactorization &fac,
                                  const std::function<Complex(Complex)> &f)
{
  const ComplexVector &ev = fac.eigenvalues();
  ComplexVector fe(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); i++)
  {
    fe(i) = f(ev(i));
    if (!std::isfinite(fe(i).real()) || !std::isfinite(fe(i).imag()))
    {
      std::ostringstream msg;
      msg << "matfun: function undefined at eigenvalue (" << ev(i).real() << ", "
          << ev(i).imag() << ")";
      throw Error(msg.str());
    }
  }
  return fe;
}

}  // namespace

ComplexMatrix matfun_via_factorization(const EigenFactorization &fac,
                                       const std::function<Complex(Complex)> &f)
{
  const ComplexVector fe = eval_at_eigenvalues(fac, f);
  return fac.S() * fe.asDiagonal() * fac.S_inv();
}

ComplexMatrix matfun_apply(const EigenFactorization &fac, const std::function<Complex(Complex)> &f,
                           const ComplexMatrix &X)
{
  const ComplexVector fe = eval_at_eigenvalues(fac, f);
  return fac.S() * (fe.asDiagonal() * (fac.S_inv() * X));
}

ComplexMatrix poly_apply(const NewtonForm &p, const ComplexMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error("poly_apply: matrix must be square");
  }
  const auto n = A.rows();
  const std::size_t m = p.coefficients.size();
  if (m == 0)
  {
    return ComplexMatrix::Zero(n, n);
  }
  ComplexMatrix P = p.coefficients[m - 1] * ComplexMatrix::Identity(n, n);
  for (std::size_t k = m - 1; k-- > 0;)
  {
    P = A * P - p.nodes[k] * P;
    P.diagonal().array() += p.coefficients[k];
  }
  return P;
}

PoleList merge_poles(const PoleList &poles)
{
  PoleList out;
  for (const auto &p : poles)
  {
    auto it = std::find_if(out.begin(), out.end(), [&](const Pole &q) { return q.value == p.value; });
    if (it == out.end())
    {
      out.push_back(p);
    }
    else
    {
      it->multiplicity += p.multiplicity;
    }
  }
  return out;
}

ComplexMatrix rational_apply(const RationalInterpolant &r, const ComplexMatrix &A)
{
  if (A.rows() != A.cols())
  {
    throw Error("rational_apply: matrix must be square");
  }
  const PartialFractions pf = partial_fractions(r.numerator.to_polynomial(), merge_poles(r.poles));
  return pf.apply(A, ComplexMatrix::Identity(A.rows(), A.cols()));
}

ComplexVector rational_apply(const RationalInterpolant &r, const ComplexMatrix &A,
                             const ComplexVector &b)
{
  if (A.rows() != A.cols() || A.rows() != b.rows())
  {
    throw Error("rational_apply: dimension mismatch");
  }
  const PartialFractions pf = partial_fractions(r.numerator.to_polynomial(), merge_poles(r.poles));
  return pf.apply(A, b);
}

Complex vexp_derivative_scalar(const VExpDerivative &vd, Complex z)
{
  const std::size_t deg = total_multiplicity(vd.poles);
  const std::size_t jmax = std::min(vd.N, deg);
  const auto c = denominator_taylor(vd.poles, z, jmax);
  // C(N, j) v^(j) = N! / (N - j)! * c_j
  Complex s = 0.0;
  double falling = 1.0;
  for (std::size_t j = 0; j <= jmax; j++)
  {
    if (j > 0)
    {
      falling *= static_cast<double>(vd.N - j + 1);
    }
    s += falling * c[j] * std::pow(vd.t, static_cast<double>(vd.N - j));
  }
  return std::exp(vd.t * z) * s;
}

Complex vexp_derivative_scaled(const VExpDerivative &vd, Complex z)
{
  const std::size_t deg = total_multiplicity(vd.poles);
  const std::size_t jmax = std::min(vd.N, deg);
  const auto c = denominator_taylor(vd.poles, z, jmax);
  // t^{N-j} / (N-j)! built upward from j = N.
  std::vector<double> tail(jmax + 1);
  {
    double term = 1.0;
    for (std::size_t k = 1; k <= vd.N; k++)
    {
      term *= vd.t / static_cast<double>(k);
      if (vd.N - k <= jmax)
      {
        tail[vd.N - k] = term;
      }
    }
    if (vd.N <= jmax)
    {
      tail[vd.N] = 1.0;
    }
  }
  Complex s = 0.0;
  for (std::size_t j = 0; j <= jmax; j++)
  {
    s += c[j] * tail[j];
  }
  return std::exp(vd.t * z) * s;
}

}  // namespace ratmat
