// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/rom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratmat/matfun.hpp"

namespace ratmat
{

std::size_t PoleSpec::total(Side side) const
{
  std::size_t n = static_cast<std::size_t>(std::max(kappa0, 0));
  if (side == Side::Two)
  {
    n += static_cast<std::size_t>(std::max(chi0, 0));
  }
  for (const auto &p : poles)
  {
    n += static_cast<std::size_t>(std::max(p.kappa, 0));
    if (side == Side::Two)
    {
      n += static_cast<std::size_t>(std::max(p.chi, 0));
    }
  }
  return n;
}

PoleList PoleSpec::denominator(Side side) const
{
  PoleList out;
  for (const auto &p : poles)
  {
    const int m = p.kappa + (side == Side::Two ? p.chi : 0);
    if (m > 0)
    {
      out.push_back({p.lambda, m});
    }
  }
  return out;
}

void PoleSpec::validate(Side side) const
{
  if (kappa0 < 0 || chi0 < 0)
  {
    throw Error("PoleSpec: negative multiplicity");
  }
  for (std::size_t k = 0; k < poles.size(); k++)
  {
    if (poles[k].kappa < 0 || poles[k].chi < 0)
    {
      throw Error("PoleSpec: negative multiplicity");
    }
    if (!std::isfinite(poles[k].lambda.real()) || !std::isfinite(poles[k].lambda.imag()))
    {
      throw Error("PoleSpec: non-finite pole");
    }
    for (std::size_t j = 0; j < k; j++)
    {
      if (poles[j].lambda == poles[k].lambda)
      {
        throw Error("PoleSpec: finite poles must be distinct");
      }
    }
  }
  if (total(side) == 0)
  {
    throw Error("PoleSpec: no Krylov vectors requested");
  }
}

namespace
{

Eigen::PartialPivLU<ComplexMatrix> factor_shift(const ComplexMatrix &A, Complex lambda)
{
  ComplexMatrix shifted = -A;
  shifted.diagonal().array() += lambda;
  Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
  if (!(lu_rcond(lu) > 1e-14))
  {
    std::ostringstream msg;
    msg << "pole in spectrum: (" << lambda.real() << ", " << lambda.imag()
        << ") I - A is singular";
    throw PoleSpectrumError(msg.str());
  }
  return lu;
}

ComplexVector normalized(const ComplexVector &x)
{
  const double n = x.norm();
  return n > 0.0 ? ComplexVector(x / n) : x;
}

// Appends x, Op x, ... (count vectors), each step applied to the normalized
// previous vector.
template <class Op>
void append_chain(std::vector<ComplexVector> &out, const ComplexVector &x, int count, Op op,
                  bool include_start)
{
  ComplexVector cur = x;
  for (int j = 0; j < count; j++)
  {
    if (j > 0 || !include_start)
    {
      cur = op(normalized(cur));
    }
    out.push_back(cur);
  }
}

void append_side(std::vector<ComplexVector> &out, const ComplexMatrix &A, const ComplexVector &x,
                 int powers, const std::vector<std::pair<Complex, int>> &shifts)
{
  append_chain(out, x, powers, [&](const ComplexVector &y) -> ComplexVector { return A * y; },
               true);
  for (const auto &[lambda, m] : shifts)
  {
    if (m <= 0)
    {
      continue;
    }
    const auto lu = factor_shift(A, lambda);
    append_chain(out, x, m, [&](const ComplexVector &y) -> ComplexVector { return lu.solve(y); },
                 false);
  }
}

}  // namespace

KrylovBasis build_krylov_basis(const ComplexMatrix &A, const ComplexVector &b, const PoleSpec &spec,
                               Side side, const std::optional<ComplexVector> &d, double dep_tol)
{
  if (A.rows() != A.cols() || b.size() != A.rows())
  {
    throw Error("build_krylov_basis: dimension mismatch");
  }
  if (side == Side::Two && (!d || d->size() != A.rows()))
  {
    throw Error("build_krylov_basis: two-sided basis needs d of matching dimension");
  }
  spec.validate(side);
  std::vector<ComplexVector> raw;
  std::vector<std::pair<Complex, int>> b_shifts, d_shifts;
  for (const auto &p : spec.poles)
  {
    b_shifts.emplace_back(p.lambda, p.kappa);
    d_shifts.emplace_back(std::conj(p.lambda), p.chi);
  }
  append_side(raw, A, b, spec.kappa0, b_shifts);
  if (side == Side::Two)
  {
    const ComplexMatrix AH = A.adjoint();
    append_side(raw, AH, *d, spec.chi0, d_shifts);
  }
  OrthonormalBasis ob = mgs_orthonormalize(raw, dep_tol);
  return KrylovBasis{std::move(ob.Q), std::move(ob.kept), raw.size()};
}

ReducedModel reduce(const ComplexMatrix &A, const ComplexVector &b,
                    const std::optional<ComplexVector> &d, const ComplexMatrix &V,
                    const PoleSpec &spec, Side side)
{
  if (A.rows() != A.cols() || V.rows() != A.rows() || b.size() != A.rows() ||
      (d && d->size() != A.rows()))
  {
    throw Error("reduce: dimension mismatch");
  }
  const auto k = V.cols();
  const ComplexMatrix gram = V.adjoint() * V - ComplexMatrix::Identity(k, k);
  if (max_abs(gram) > 1e-10)
  {
    throw Error("reduce: V must have orthonormal columns");
  }
  ReducedModel m;
  m.V = V;
  m.Ahat = V.adjoint() * (A * V);
  m.bhat = V.adjoint() * b;
  if (d)
  {
    m.dhat = V.adjoint() * *d;
  }
  m.spec = spec;
  m.side = side;
  m.ahat_fac = eig_small(m.Ahat);
  const ComplexVector &ev = m.ahat_fac.eigenvalues();
  m.reduced_spectrum =
    cluster_points(std::span<const Complex>(ev.data(), static_cast<std::size_t>(ev.size())),
                   kSpectrumClusterTol);
  return m;
}

Complex scalar_impulse_exact(const EigenFactorization &fac, const ComplexVector &b,
                             const ComplexVector &d, double t)
{
  const ComplexVector c = fac.S_inv() * b;
  const ComplexVector e = fac.S().adjoint() * d;
  const ComplexVector &ev = fac.eigenvalues();
  Complex s = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); i++)
  {
    s += std::conj(e(i)) * std::exp(ev(i) * t) * c(i);
  }
  return s;
}

ComplexVector vector_impulse_exact(const EigenFactorization &fac, const ComplexVector &b,
                                   double t)
{
  return matfun_apply(fac, ExpT{t}, b);
}

Complex impulse_reduced_scalar(const ReducedModel &model, double t)
{
  if (model.dhat.size() != model.bhat.size())
  {
    throw Error("impulse_reduced_scalar: model has no output vector");
  }
  return model.dhat.dot(matfun_apply(model.ahat_fac, ExpT{t}, model.bhat).col(0));
}

ComplexVector impulse_reduced_vector(const ReducedModel &model, double t)
{
  return model.V * matfun_apply(model.ahat_fac, ExpT{t}, model.bhat);
}

// ---------------------------------------------------------------------------
// Moment matching

namespace
{

struct ProbeLimits
{
  int powers;
  std::vector<int> resolvent;
};

ProbeLimits probe_limits(const ReducedModel &model, MomentForm form)
{
  const bool both = form == MomentForm::Bilinear && model.side == Side::Two;
  ProbeLimits lim{model.spec.kappa0 + (both ? model.spec.chi0 : 0), {}};
  for (const auto &p : model.spec.poles)
  {
    lim.resolvent.push_back(p.kappa + (both ? p.chi : 0));
  }
  return lim;
}

void check_probe(const Probe &p, const ProbeLimits &lim)
{
  bool ok = false;
  if (p.kind == Probe::Kind::Power)
  {
    ok = p.j >= 0 && p.j < lim.powers;
  }
  else
  {
    ok = p.pole < lim.resolvent.size() && p.j >= 1 && p.j <= lim.resolvent[p.pole];
  }
  if (!ok)
  {
    std::ostringstream msg;
    msg << "moment_match_check: probe outside the admissible form ("
        << (p.kind == Probe::Kind::Power ? "power" : "resolvent") << ", j = " << p.j << ")";
    throw Error(msg.str());
  }
}

// r(M) x for a probe; M is A or Ahat.
ComplexVector apply_probe(const Probe &p, const ComplexMatrix &M, const ComplexVector &x,
                          const PoleSpec &spec)
{
  ComplexVector y = x;
  if (p.kind == Probe::Kind::Power)
  {
    for (int j = 0; j < p.j; j++)
    {
      y = M * y;
    }
    return y;
  }
  const auto lu = factor_shift(M, spec.poles[p.pole].lambda);
  for (int j = 0; j < p.j; j++)
  {
    y = lu.solve(y);
  }
  return y;
}

}  // namespace

std::vector<Probe> admissible_probes(const ReducedModel &model, MomentForm form)
{
  const ProbeLimits lim = probe_limits(model, form);
  std::vector<Probe> out;
  for (int j = 0; j < lim.powers; j++)
  {
    out.push_back({Probe::Kind::Power, j, 0});
  }
  for (std::size_t k = 0; k < lim.resolvent.size(); k++)
  {
    for (int j = 1; j <= lim.resolvent[k]; j++)
    {
      out.push_back({Probe::Kind::Resolvent, j, k});
    }
  }
  return out;
}

double moment_match_check(const ReducedModel &model, const ComplexMatrix &A,
                          const ComplexVector &b, const std::optional<ComplexVector> &d,
                          const std::vector<Probe> &probes, MomentForm form)
{
  if (form == MomentForm::Bilinear && (!d || model.dhat.size() != model.bhat.size()))
  {
    throw Error("moment_match_check: bilinear form needs d and dhat");
  }
  const ProbeLimits lim = probe_limits(model, form);
  double worst = 0.0;
  for (const auto &p : probes)
  {
    check_probe(p, lim);
    const ComplexVector full = apply_probe(p, A, b, model.spec);
    const ComplexVector red = apply_probe(p, model.Ahat, model.bhat, model.spec);
    const double scale = full.norm();
    double diff = 0.0;
    double denom = scale;
    if (form == MomentForm::Vector)
    {
      diff = (full - model.V * red).norm();
    }
    else
    {
      diff = std::abs(d->dot(full) - model.dhat.dot(red));
      denom = scale * d->norm();
    }
    worst = std::max(worst, denom > 0.0 ? diff / denom : diff);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Error bound

BoundQuery arnoldi_bound_query(const ReducedModel &model, const ArnoldiBoundOptions &opts)
{
  NodeList nodes = NodeList::from_multiplicities(model.reduced_spectrum);
  const PoleList poles = model.spec.denominator(model.side);
  const std::size_t N = nodes.size();
  return BoundQuery::standard(std::move(nodes), poles, exp_kernel(poles, N, opts.t), opts.n_s,
                              opts.n_mu);
}

BoundResult arnoldi_error_bound(const ReducedModel &model, const DiagonalizedMatrix &M,
                                const ComplexVector &b, const std::optional<ComplexVector> &d,
                                const ArnoldiBoundOptions &opts)
{
  const BoundQuery q = arnoldi_bound_query(model, opts);
  if (d)
  {
    return bound_bilinear(q, M, b, *d, opts.route);
  }
  return bound_vector(q, M, b, opts.route);
}

}  // namespace ratmat
