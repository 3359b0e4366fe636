// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ratmat/bounds.hpp"
#include "ratmat/numcore.hpp"
#include "ratmat/polynomial.hpp"
#include "ratmat/types.hpp"

namespace ratmat
{

enum class Side
{
  One,
  Two,
};

/// A finite pole with its multiplicity on the b side (kappa) and on the d
/// side (chi, two-sided only).
struct FinitePole
{
  Complex lambda;
  int kappa = 1;
  int chi = 0;
};

/// Pole structure of a rational Krylov space. kappa0 (chi0) counts the powers
/// of A (A^H) applied to b (d), i.e. the multiplicity of the pole at infinity.
struct PoleSpec
{
  int kappa0 = 1;
  int chi0 = 0;
  std::vector<FinitePole> poles;

  /// Number of generated vectors: sum kappa (+ sum chi for two sides).
  [[nodiscard]] std::size_t total(Side side) const;
  /// Finite poles with multiplicity kappa (or kappa + chi).
  [[nodiscard]] PoleList denominator(Side side) const;
  /// Nonnegative multiplicities, positive total, distinct finite poles.
  void validate(Side side) const;
};

struct KrylovBasis
{
  ComplexMatrix V;
  /// Indices into the generated list that contributed a column.
  std::vector<std::size_t> kept;
  std::size_t generated = 0;
};

/// Orthonormal basis of
///   b, A b, ..., A^{kappa0-1} b, (lambda_k I - A)^{-j} b (j = 1..kappa_k),
/// and for two sides additionally
///   d, A^H d, ..., (conj(lambda_k) I - A^H)^{-j} d (j = 1..chi_k),
/// generated in that order. Each vector is produced from the normalized
/// previous one, which leaves the span unchanged. Dependent vectors are
/// dropped by Gram-Schmidt. Throws PoleSpectrumError if a shift is singular.
KrylovBasis build_krylov_basis(const ComplexMatrix &A, const ComplexVector &b, const PoleSpec &spec,
                               Side side, const std::optional<ComplexVector> &d = std::nullopt,
                               double dep_tol = kDefaultDependenceTol);

/// Relative distance below which eigenvalues of A-hat are merged into one
/// node with multiplicity.
inline constexpr double kSpectrumClusterTol = 1e-8;

struct ReducedModel
{
  ComplexMatrix V;
  ComplexMatrix Ahat;
  ComplexVector bhat;
  /// Empty when no output vector was given.
  ComplexVector dhat;
  PoleSpec spec;
  Side side = Side::One;
  /// Eigen-decomposition of Ahat (may be flagged unusable if defective).
  EigenFactorization ahat_fac = EigenFactorization::eigenvalues_only(ComplexVector());
  /// Clustered eigenvalues of Ahat with algebraic multiplicities.
  PoleList reduced_spectrum;

  [[nodiscard]] std::size_t order() const { return static_cast<std::size_t>(Ahat.rows()); }
};

/// Ahat = V^H A V, bhat = V^H b, dhat = V^H d. Requires ||V^H V - I||_max <= 1e-10.
ReducedModel reduce(const ComplexMatrix &A, const ComplexVector &b,
                    const std::optional<ComplexVector> &d, const ComplexMatrix &V,
                    const PoleSpec &spec = {}, Side side = Side::One);

/// d^H exp(t A) b through the factorization of A.
Complex scalar_impulse_exact(const EigenFactorization &fac, const ComplexVector &b,
                             const ComplexVector &d, double t);

/// exp(t A) b through the factorization of A.
ComplexVector vector_impulse_exact(const EigenFactorization &fac, const ComplexVector &b,
                                   double t);

/// dhat^H exp(t Ahat) bhat.
Complex impulse_reduced_scalar(const ReducedModel &model, double t);

/// V exp(t Ahat) bhat.
ComplexVector impulse_reduced_vector(const ReducedModel &model, double t);

/// A probe rational function: lambda^j (Power) or (lambda_k - lambda)^{-j}
/// (Resolvent, k indexing spec.poles).
struct Probe
{
  enum class Kind
  {
    Power,
    Resolvent,
  };
  Kind kind = Kind::Power;
  int j = 0;
  std::size_t pole = 0;
};

enum class MomentForm
{
  /// r(A) b = V r(Ahat) bhat; admissible j < kappa0, j <= kappa_k.
  Vector,
  /// d^H r(A) b = dhat^H r(Ahat) bhat; for two-sided models the limits are
  /// kappa + chi.
  Bilinear,
};

/// All admissible probes of the given form.
std::vector<Probe> admissible_probes(const ReducedModel &model, MomentForm form);

/// Largest relative mismatch of the moment-matching identity over the probes.
/// Vector form: ||r(A) b - V r(Ahat) bhat|| / ||r(A) b||. Bilinear form: the
/// absolute difference divided by ||d|| ||r(A) b||. Throws for inadmissible
/// probes.
double moment_match_check(const ReducedModel &model, const ComplexMatrix &A,
                          const ComplexVector &b, const std::optional<ComplexVector> &d,
                          const std::vector<Probe> &probes, MomentForm form);

struct ArnoldiBoundOptions
{
  double t = 1.0;
  std::size_t n_s = 11;
  std::size_t n_mu = 50;
  CoreRoute route = CoreRoute::Diagonal;
};

/// Error bound for the reduced impulse response: nodes are the reduced
/// spectrum with multiplicities, v has the finite poles of model.spec, f = exp_t.
/// Vector-norm bound without d, bilinear bound with d.
BoundResult arnoldi_error_bound(const ReducedModel &model, const DiagonalizedMatrix &M,
                                const ComplexVector &b, const std::optional<ComplexVector> &d,
                                const ArnoldiBoundOptions &opts = {});

/// The query used by arnoldi_error_bound.
BoundQuery arnoldi_bound_query(const ReducedModel &model, const ArnoldiBoundOptions &opts);

}  // namespace ratmat
