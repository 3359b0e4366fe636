// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

#include "ratmat/interp.hpp"
#include "ratmat/numcore.hpp"
#include "ratmat/polynomial.hpp"
#include "ratmat/types.hpp"

namespace ratmat
{

/// S diag(f(eigenvalues)) S^{-1}. Throws if f is not finite at an eigenvalue.
ComplexMatrix matfun_via_factorization(const EigenFactorization &fac,
                                       const std::function<Complex(Complex)> &f);

/// Same, applied to a block of vectors without forming the n x n result.
ComplexMatrix matfun_apply(const EigenFactorization &fac, const std::function<Complex(Complex)> &f,
                           const ComplexMatrix &X);

/// Newton form at a matrix argument by nested multiplication with (A - x_k I).
ComplexMatrix poly_apply(const NewtonForm &p, const ComplexMatrix &A);

/// r(A) b through the partial-fraction expansion of r: the polynomial part by
/// Horner, each pole by LU solves with the shifted matrix. v(A) is never
/// formed. Throws PoleSpectrumError when a shift is singular.
ComplexVector rational_apply(const RationalInterpolant &r, const ComplexMatrix &A,
                             const ComplexVector &b);
ComplexMatrix rational_apply(const RationalInterpolant &r, const ComplexMatrix &A);

/// Merges exactly repeated entries of a pole list (multiplicities add).
PoleList merge_poles(const PoleList &poles);

/// exp_t(z) = e^{z t}.
struct ExpT
{
  double t = 1.0;

  [[nodiscard]] Complex operator()(Complex z) const { return std::exp(z * t); }
  [[nodiscard]] JetFunction jet() const { return jets::exp(t); }
};

/// (v exp_t)^(N) for v(z) = prod (z - pole)^m.
struct VExpDerivative
{
  PoleList poles;
  double t = 1.0;
  std::size_t N = 0;
};

/// (v exp_t)^(N)(z) = e^{tz} sum_j C(N, j) v^(j)(z) t^{N-j}.
Complex vexp_derivative_scalar(const VExpDerivative &vd, Complex z);

/// (v exp_t)^(N)(z) / N!, summed without forming N!.
Complex vexp_derivative_scaled(const VExpDerivative &vd, Complex z);

}  // namespace ratmat
