// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ratmat
{

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

using namespace std::complex_literals;

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a pole of a rational function meets the spectrum of a matrix
/// (a shifted linear system is numerically singular).
class PoleSpectrumError : public Error
{
public:
  using Error::Error;
};

/// Throws Error(what + ": ...") if any entry is NaN or Inf.
void require_finite(const ComplexMatrix &M, const std::string &what);

/// Largest entry modulus, 0 for empty matrices.
double max_abs(const ComplexMatrix &M);

}  // namespace ratmat
