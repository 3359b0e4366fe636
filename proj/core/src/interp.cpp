// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/interp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

#include "ratmat/numcore.hpp"

namespace ratmat
{

// ---------------------------------------------------------------------------
// NodeList

NodeList::NodeList(std::span<const Complex> nodes)
{
  std::vector<std::pair<Complex, int>> groups;
  for (const Complex z : nodes)
  {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    {
      throw Error("NodeList: non-finite node");
    }
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const auto &g) { return std::abs(g.first - z) <= kConfluenceTol; });
    if (it == groups.end())
    {
      groups.emplace_back(z, 1);
    }
    else
    {
      it->second++;
    }
  }
  for (const auto &[z, m] : groups)
  {
    nodes_.insert(nodes_.end(), static_cast<std::size_t>(m), z);
  }
}

NodeList NodeList::from_multiplicities(const PoleList &groups)
{
  std::vector<Complex> z;
  for (const auto &g : groups)
  {
    if (g.multiplicity < 1)
    {
      throw Error("NodeList: multiplicity must be positive");
    }
    z.insert(z.end(), static_cast<std::size_t>(g.multiplicity), g.value);
  }
  return NodeList(z);
}

PoleList NodeList::distinct() const
{
  PoleList out;
  for (const Complex z : nodes_)
  {
    if (!out.empty() && out.back().value == z)
    {
      out.back().multiplicity++;
    }
    else
    {
      out.push_back({z, 1});
    }
  }
  return out;
}

int NodeList::max_multiplicity() const
{
  int m = 0;
  for (const auto &g : distinct())
  {
    m = std::max(m, g.multiplicity);
  }
  return m;
}

Complex NodeList::omega(Complex z) const
{
  Complex w = 1.0;
  for (const Complex zk : nodes_)
  {
    w *= z - zk;
  }
  return w;
}

Polynomial NodeList::omega_polynomial() const
{
  return Polynomial::from_roots(nodes_);
}

NodeList NodeList::with(Complex z) const
{
  std::vector<Complex> ext = nodes_;
  ext.push_back(z);
  return NodeList(ext);
}

// ---------------------------------------------------------------------------
// JetFunction

std::vector<Complex> JetFunction::eval(Complex z, int order) const
{
  std::vector<Complex> out(static_cast<std::size_t>(order) + 1);
  eval_into(z, out);
  return out;
}

void JetFunction::eval_into(Complex z, std::span<Complex> out) const
{
  if (!kernel_)
  {
    throw Error("JetFunction: empty function");
  }
  const int order = static_cast<int>(out.size()) - 1;
  if (!provides(order))
  {
    std::ostringstream msg;
    msg << "JetFunction: derivative of order " << order << " unavailable (max "
        << max_order_ << ")";
    throw Error(msg.str());
  }
  kernel_(z, out);
}

Complex JetFunction::operator()(Complex z) const
{
  Complex v;
  eval_into(z, std::span<Complex>(&v, 1));
  return v;
}

namespace jets
{

JetFunction exp(Complex alpha)
{
  return JetFunction(
    [alpha](Complex z, std::span<Complex> out)
    {
      out[0] = std::exp(alpha * z);
      for (std::size_t k = 1; k < out.size(); k++)
      {
        out[k] = alpha * out[k - 1];
      }
    });
}

JetFunction polynomial(Polynomial p)
{
  return JetFunction(
    [p = std::move(p)](Complex z, std::span<Complex> out)
    {
      const auto a = p.taylor_at(z);
      double fact = 1.0;
      for (std::size_t k = 0; k < out.size(); k++)
      {
        if (k > 0)
        {
          fact *= static_cast<double>(k);
        }
        out[k] = k < a.size() ? fact * a[k] : Complex(0.0);
      }
    });
}

JetFunction simple_pole(Complex a)
{
  return JetFunction(
    [a](Complex z, std::span<Complex> out)
    {
      const Complex inv = 1.0 / (z - a);
      Complex term = inv;
      for (std::size_t k = 0; k < out.size(); k++)
      {
        out[k] = term;
        term *= -static_cast<double>(k + 1) * inv;
      }
    });
}

JetFunction times_denominator(const PoleList &poles, JetFunction f)
{
  const int max_order = f.max_order();
  return JetFunction(
    [poles, f = std::move(f)](Complex z, std::span<Complex> out)
    {
      const std::size_t order = out.size() - 1;
      const auto c = denominator_taylor(poles, z, order);
      std::vector<Complex> fj(order + 1);
      f.eval_into(z, fj);
      // (v f)^(k) = sum_j k!/(k-j)! * (v^(j)/j!) * f^(k-j)
      for (std::size_t k = 0; k <= order; k++)
      {
        Complex s = 0.0;
        double falling = 1.0;
        for (std::size_t j = 0; j <= k; j++)
        {
          if (j > 0)
          {
            falling *= static_cast<double>(k - j + 1);
          }
          s += falling * c[j] * fj[k - j];
        }
        out[k] = s;
      }
    },
    max_order);
}

JetFunction values_only(std::function<Complex(Complex)> f)
{
  return JetFunction([f = std::move(f)](Complex z, std::span<Complex> out) { out[0] = f(z); },
                     0);
}

}  // namespace jets

// ---------------------------------------------------------------------------
// Newton form and rational interpolant

Complex NewtonForm::operator()(Complex z) const
{
  const std::size_t m = coefficients.size();
  if (m == 0)
  {
    return 0.0;
  }
  Complex p = coefficients[m - 1];
  for (std::size_t k = m - 1; k-- > 0;)
  {
    p = p * (z - nodes[k]) + coefficients[k];
  }
  return p;
}

std::vector<Complex> NewtonForm::taylor(Complex z, std::size_t order) const
{
  std::vector<Complex> P(order + 1, 0.0);
  const std::size_t m = coefficients.size();
  if (m == 0)
  {
    return P;
  }
  P[0] = coefficients[m - 1];
  for (std::size_t k = m - 1; k-- > 0;)
  {
    const Complex shift = z - nodes[k];
    for (std::size_t j = order; j > 0; j--)
    {
      P[j] = P[j] * shift + P[j - 1];
    }
    P[0] = P[0] * shift + coefficients[k];
  }
  return P;
}

Polynomial NewtonForm::to_polynomial() const
{
  const std::size_t m = coefficients.size();
  if (m == 0)
  {
    return Polynomial();
  }
  Polynomial p = Polynomial::constant(coefficients[m - 1]);
  for (std::size_t k = m - 1; k-- > 0;)
  {
    p = p * Polynomial({-nodes[k], 1.0}) + Polynomial::constant(coefficients[k]);
  }
  return p;
}

Complex RationalInterpolant::operator()(Complex z) const
{
  return numerator(z) / denominator(z);
}

std::vector<Complex> RationalInterpolant::taylor(Complex z, std::size_t order) const
{
  const auto u = numerator.taylor(z, order);
  const auto v = denominator_taylor(poles, z, order);
  return series_mul(u, series_reciprocal(v, order), order);
}

// ---------------------------------------------------------------------------
// Divided differences and their oracles

std::vector<Complex> divided_differences(const JetFunction &f, const NodeList &nodes)
{
  const std::size_t N = nodes.size();
  if (N == 0)
  {
    throw Error("divided_differences: empty node list");
  }
  // One jet per distinct node, up to its multiplicity - 1, pre-divided by k!.
  std::vector<std::vector<Complex>> jet_of(N);
  {
    std::size_t i = 0;
    for (const auto &g : nodes.distinct())
    {
      auto d = f.eval(g.value, g.multiplicity - 1);
      double fact = 1.0;
      for (std::size_t k = 1; k < d.size(); k++)
      {
        fact *= static_cast<double>(k);
        d[k] /= fact;
      }
      for (int r = 0; r < g.multiplicity; r++)
      {
        jet_of[i++] = d;
      }
    }
  }
  std::vector<Complex> T(N);
  for (std::size_t i = 0; i < N; i++)
  {
    T[i] = jet_of[i][0];
  }
  for (std::size_t m = 1; m < N; m++)
  {
    for (std::size_t i = N - 1; i >= m; i--)
    {
      const Complex dz = nodes[i] - nodes[i - m];
      if (dz == 0.0)
      {
        T[i] = jet_of[i][m];
      }
      else
      {
        T[i] = (T[i] - T[i - 1]) / dz;
      }
    }
  }
  return T;
}

std::pair<std::vector<double>, std::vector<double>> gauss_legendre01(std::size_t n)
{
  if (n == 0)
  {
    throw Error("gauss_legendre01: need at least one point");
  }
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < (n + 1) / 2; i++)
  {
    double t = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; it++)
    {
      double p0 = 1.0, p1 = t;
      for (std::size_t k = 2; k <= n; k++)
      {
        const double pk = ((2.0 * static_cast<double>(k) - 1.0) * t * p1 -
                           (static_cast<double>(k) - 1.0) * p0) /
                          static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      if (n == 1)
      {
        p0 = 1.0;
        p1 = t;
      }
      dp = static_cast<double>(n) * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16)
      {
        break;
      }
    }
    const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
    x[i] = 0.5 * (1.0 - t);
    x[n - 1 - i] = 0.5 * (1.0 + t);
    w[i] = w[n - 1 - i] = 0.5 * wi;
  }
  return {x, w};
}

namespace
{

Complex simplex_level(const JetFunction &f, std::span<const Complex> steps, std::size_t level,
                      double upper, Complex point, const std::vector<double> &x,
                      const std::vector<double> &w, std::vector<Complex> &buf)
{
  if (level == steps.size())
  {
    f.eval_into(point, buf);
    return buf.back();
  }
  Complex sum = 0.0;
  for (std::size_t j = 0; j < x.size(); j++)
  {
    const double t = upper * x[j];
    sum += upper * w[j] *
           simplex_level(f, steps, level + 1, t, point + steps[level] * t, x, w, buf);
  }
  return sum;
}

}  // namespace

Complex genocchi_hermite_oracle(const JetFunction &f, const NodeList &nodes,
                                std::size_t quad_points)
{
  const std::size_t N = nodes.size();
  if (N == 0)
  {
    throw Error("genocchi_hermite_oracle: empty node list");
  }
  if (N > 4)
  {
    throw Error("genocchi_hermite_oracle: oracle scale exceeded (N > 4)");
  }
  std::vector<Complex> steps(N - 1);
  for (std::size_t k = 0; k + 1 < N; k++)
  {
    steps[k] = nodes[k + 1] - nodes[k];
  }
  const auto [x, w] = gauss_legendre01(quad_points);
  std::vector<Complex> buf(N);
  return simplex_level(f, steps, 0, 1.0, nodes[0], x, w, buf);
}

Complex contour_divdiff_oracle(const JetFunction &f, const NodeList &nodes, Complex center,
                               double radius, std::size_t quad_points)
{
  if (nodes.empty())
  {
    throw Error("contour_divdiff_oracle: empty node list");
  }
  if (!(radius > 0.0) || quad_points == 0)
  {
    throw Error("contour_divdiff_oracle: radius and quad_points must be positive");
  }
  for (const Complex z : nodes.nodes())
  {
    if (!(std::abs(z - center) < radius))
    {
      throw Error("contour_divdiff_oracle: node on or outside the contour");
    }
  }
  // lambda = c + rho e^{i theta}; d lambda = i (lambda - c) d theta
  Complex sum = 0.0;
  for (std::size_t j = 0; j < quad_points; j++)
  {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(quad_points);
    const Complex offset = std::polar(radius, theta);
    const Complex lambda = center + offset;
    sum += f(lambda) / nodes.omega(lambda) * offset;
  }
  return sum / static_cast<double>(quad_points);
}

// ---------------------------------------------------------------------------
// Interpolation

NewtonForm hermite_interpolate(const JetFunction &f, const NodeList &nodes)
{
  return NewtonForm{nodes, divided_differences(f, nodes)};
}

namespace
{

void require_nonvanishing(const PoleList &poles, Complex z, const char *what)
{
  const Complex v = denominator_value(poles, z);
  if (std::abs(v) <= 1e-12 * denominator_scale(poles, z))
  {
    std::ostringstream msg;
    msg << what << ": denominator vanishes at node (" << z.real() << ", " << z.imag() << ")";
    throw Error(msg.str());
  }
}

}  // namespace

RationalInterpolant rational_interpolate_fixed_denominator(const JetFunction &f,
                                                           const NodeList &nodes,
                                                           const PoleList &poles)
{
  for (const auto &g : nodes.distinct())
  {
    require_nonvanishing(poles, g.value, "rational_interpolate_fixed_denominator");
  }
  return RationalInterpolant{hermite_interpolate(jets::times_denominator(poles, f), nodes),
                             poles, nodes};
}

Complex remainder_scalar(const JetFunction &f, const RationalInterpolant &r, Complex z)
{
  const Complex v = r.denominator(z);
  if (std::abs(v) <= 1e-12 * denominator_scale(r.poles, z))
  {
    throw Error("remainder_scalar: denominator vanishes at z");
  }
  const auto dd = divided_differences(jets::times_denominator(r.poles, f), r.nodes.with(z));
  return r.nodes.omega(z) / v * dd.back();
}

// ---------------------------------------------------------------------------
// Linearized rational fitting

namespace
{

// Null vector of a K x (K+1) system from the full SVD.
Eigen::VectorXcd null_vector(const ComplexMatrix &M)
{
  Eigen::JacobiSVD<ComplexMatrix> svd(M, Eigen::ComputeFullV);
  return svd.matrixV().col(M.cols() - 1);
}

// True if the samples are closed under (z, f) -> (conj z, conj f).
bool conjugate_symmetric(std::span<const std::pair<Complex, Complex>> samples)
{
  double scale = 1.0;
  for (const auto &[z, f] : samples)
  {
    scale = std::max({scale, std::abs(z), std::abs(f)});
  }
  const double tol = 1e-14 * scale;
  for (const auto &[z, f] : samples)
  {
    const bool found = std::any_of(samples.begin(), samples.end(), [&](const auto &o)
                                   { return std::abs(o.first - std::conj(z)) <= tol &&
                                            std::abs(o.second - std::conj(f)) <= tol; });
    if (!found)
    {
      return false;
    }
  }
  return true;
}

// Real null vector of [Re M; Im M]. For conjugate-symmetric data the complex
// null space has a real basis, and this keeps the poles in conjugate pairs
// even when the system is nearly rank deficient.
Eigen::VectorXcd real_null_vector(const ComplexMatrix &M)
{
  Eigen::MatrixXd R(2 * M.rows(), M.cols());
  R << M.real(), M.imag();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullV);
  return svd.matrixV().col(M.cols() - 1).cast<Complex>();
}

// Highest index whose entry is not negligible relative to the vector norm.
std::size_t effective_degree(std::span<const Complex> c)
{
  double norm = 0.0;
  for (const auto &x : c)
  {
    norm = std::max(norm, std::abs(x));
  }
  for (std::size_t j = c.size(); j-- > 1;)
  {
    if (std::abs(c[j]) > 1e-13 * norm)
    {
      return j;
    }
  }
  return 0;
}

// p(w) with w = (z - c) / rho, re-expanded in powers of z.
Polynomial compose_affine(std::span<const Complex> a, Complex c, double rho)
{
  const Polynomial w({-c / rho, 1.0 / rho});
  Polynomial p = Polynomial::constant(a.empty() ? Complex(0.0) : a.back());
  for (std::size_t j = a.size(); j-- > 1;)
  {
    p = p * w + Polynomial::constant(a[j - 1]);
  }
  return p;
}

Complex horner(std::span<const Complex> a, Complex x)
{
  Complex p = 0.0;
  for (std::size_t j = a.size(); j-- > 0;)
  {
    p = p * x + a[j];
  }
  return p;
}

}  // namespace

RationalFit linearized_rational_fit(std::span<const std::pair<Complex, Complex>> samples,
                                    std::size_t L, std::size_t M)
{
  const std::size_t K = samples.size();
  if (K != L + M + 1)
  {
    throw Error("linearized_rational_fit: need exactly L + M + 1 samples");
  }
  for (std::size_t i = 0; i < K; i++)
  {
    for (std::size_t j = 0; j < i; j++)
    {
      if (std::abs(samples[i].first - samples[j].first) <= kConfluenceTol)
      {
        throw Error("linearized_rational_fit: sample points must be distinct");
      }
    }
  }
  // Work in w = (z - c) / rho, which maps the samples into the unit disc.
  Complex c = 0.0;
  for (const auto &s : samples)
  {
    c += s.first;
  }
  c /= static_cast<double>(K);
  const bool symmetric = conjugate_symmetric(samples);
  if (symmetric)
  {
    c = c.real();
  }
  double rho = 0.0;
  for (const auto &s : samples)
  {
    rho = std::max(rho, std::abs(s.first - c));
  }
  if (rho == 0.0)
  {
    rho = 1.0;
  }
  std::vector<Complex> w(K);
  for (std::size_t i = 0; i < K; i++)
  {
    w[i] = (samples[i].first - c) / rho;
  }
  ComplexMatrix sys(static_cast<Eigen::Index>(K), static_cast<Eigen::Index>(L + M + 2));
  for (std::size_t i = 0; i < K; i++)
  {
    const auto row = static_cast<Eigen::Index>(i);
    Complex pw = 1.0;
    for (std::size_t j = 0; j <= std::max(L, M); j++)
    {
      if (j <= L)
      {
        sys(row, static_cast<Eigen::Index>(j)) = pw;
      }
      if (j <= M)
      {
        sys(row, static_cast<Eigen::Index>(L + 1 + j)) = -samples[i].second * pw;
      }
      pw *= w[i];
    }
  }
  const Eigen::VectorXcd nv = symmetric ? real_null_vector(sys) : null_vector(sys);
  std::vector<Complex> a_w(nv.data(), nv.data() + L + 1);
  std::vector<Complex> b_w(nv.data() + L + 1, nv.data() + L + M + 2);

  for (std::size_t i = 0; i < K; i++)
  {
    double mag = 0.0, pw = 1.0;
    for (const auto &b : b_w)
    {
      mag += std::abs(b) * pw;
      pw *= std::abs(w[i]);
    }
    if (std::abs(horner(b_w, w[i])) <= 1e-10 * mag)
    {
      std::ostringstream msg;
      msg << "linearized_rational_fit: denominator vanishes at sample " << i
          << " (unattainable point)";
      throw UnattainablePointError(i, msg.str());
    }
  }

  RationalFit fit;
  // Coefficients in z, normalized: unit-norm denominator, positive real leading entry.
  Polynomial u = compose_affine(a_w, c, rho);
  Polynomial v = compose_affine(b_w, c, rho);
  {
    const std::size_t dv = effective_degree(v.coeffs());
    double norm = 0.0;
    for (const auto &x : v.coeffs())
    {
      norm += std::norm(x);
    }
    norm = std::sqrt(norm);
    const Complex lead = v.coeffs()[dv];
    const Complex scale = std::conj(lead) / std::abs(lead) / norm;
    fit.numerator = scale * u;
    fit.denominator = scale * v;
  }

  const std::size_t dw = effective_degree(b_w);
  if (dw >= 1)
  {
    const auto roots_w = poly_roots(std::span<const Complex>(b_w.data(), dw + 1));
    for (const Complex r : roots_w)
    {
      fit.poles.push_back(c + rho * r);
    }
  }
  PoleList poles;
  for (const Complex p : fit.poles)
  {
    poles.push_back({p, 1});
  }
  // u/v = u_tilde / prod(z - pole): u_tilde(z) = u_w(w(z)) rho^d / b_lead.
  const Complex factor = std::pow(rho, static_cast<double>(dw)) / b_w[dw];
  std::vector<Complex> centers;
  for (std::size_t i = 0; i <= L; i++)
  {
    centers.push_back(samples[i].first);
  }
  const JetFunction u_tilde = jets::values_only(
    [&](Complex z) { return horner(a_w, (z - c) / rho) * factor; });
  const NodeList center_nodes(centers);
  fit.interpolant.numerator = hermite_interpolate(u_tilde, center_nodes);
  fit.interpolant.poles = poles;
  std::vector<Complex> all;
  for (const auto &s : samples)
  {
    all.push_back(s.first);
  }
  fit.interpolant.nodes = NodeList(all);
  for (const auto &s : samples)
  {
    fit.max_residual = std::max(fit.max_residual, std::abs(fit.interpolant(s.first) - s.second));
  }
  return fit;
}

RationalInterpolant pade_approximant(const JetFunction &f, Complex z0, std::size_t L,
                                     std::size_t M)
{
  const std::size_t N = L + M + 1;
  auto d = f.eval(z0, static_cast<int>(N) - 1);
  double fact = 1.0;
  for (std::size_t k = 1; k < N; k++)
  {
    fact *= static_cast<double>(k);
    d[k] /= fact;
  }
  PoleList poles;
  if (M > 0)
  {
    // a_k [k <= L] - sum_{j <= min(k, M)} b_j c_{k-j} = 0, k = 0..N-1, in h = z - z0.
    ComplexMatrix sys = ComplexMatrix::Zero(static_cast<Eigen::Index>(N),
                                            static_cast<Eigen::Index>(N + 1));
    for (std::size_t k = 0; k < N; k++)
    {
      const auto row = static_cast<Eigen::Index>(k);
      if (k <= L)
      {
        sys(row, static_cast<Eigen::Index>(k)) = 1.0;
      }
      for (std::size_t j = 0; j <= std::min(k, M); j++)
      {
        sys(row, static_cast<Eigen::Index>(L + 1 + j)) = -d[k - j];
      }
    }
    const Eigen::VectorXcd nv = null_vector(sys);
    std::vector<Complex> b(nv.data() + L + 1, nv.data() + N + 1);
    const std::size_t db = effective_degree(b);
    if (std::abs(b[0]) <= 1e-13 * Eigen::VectorXcd(nv.tail(M + 1)).norm())
    {
      throw Error("pade_approximant: denominator vanishes at the expansion point");
    }
    if (db >= 1)
    {
      for (const Complex r : poly_roots(std::span<const Complex>(b.data(), db + 1)))
      {
        poles.push_back({z0 + r, 1});
      }
    }
  }
  const std::vector<Complex> nodes(N, z0);
  return rational_interpolate_fixed_denominator(f, NodeList(nodes), poles);
}

// ---------------------------------------------------------------------------
// Partial fractions

Complex PartialFractions::operator()(Complex z) const
{
  Complex s = quotient(z);
  for (std::size_t k = 0; k < poles.size(); k++)
  {
    const Complex inv = 1.0 / (z - poles[k].value);
    Complex p = inv;
    for (const Complex r : residues[k])
    {
      s += r * p;
      p *= inv;
    }
  }
  return s;
}

ComplexMatrix PartialFractions::apply(const ComplexMatrix &A, const ComplexMatrix &X) const
{
  const auto n = A.rows();
  ComplexMatrix out = quotient.apply(A, X);
  for (std::size_t k = 0; k < poles.size(); k++)
  {
    ComplexMatrix shifted = A;
    shifted.diagonal().array() -= poles[k].value;
    Eigen::PartialPivLU<ComplexMatrix> lu(shifted);
    if (!(lu_rcond(lu) > 1e-14))
    {
      std::ostringstream msg;
      msg << "pole meets spectrum: A - (" << poles[k].value.real() << ", "
          << poles[k].value.imag() << ") I is singular";
      throw PoleSpectrumError(msg.str());
    }
    ComplexMatrix Y = X;
    for (const Complex r : residues[k])
    {
      Y = lu.solve(Y);
      out += r * Y;
    }
  }
  (void)n;
  return out;
}

PartialFractions partial_fractions(const Polynomial &numerator, const PoleList &poles)
{
  for (std::size_t k = 0; k < poles.size(); k++)
  {
    if (poles[k].multiplicity < 1)
    {
      throw Error("partial_fractions: multiplicities must be positive");
    }
    for (std::size_t j = 0; j < k; j++)
    {
      if (poles[j].value == poles[k].value)
      {
        throw Error("partial_fractions: poles must be distinct");
      }
    }
  }
  PartialFractions pf;
  pf.poles = poles;
  pf.quotient = numerator.divmod(denominator_polynomial(poles)).first;
  for (std::size_t k = 0; k < poles.size(); k++)
  {
    const auto m = static_cast<std::size_t>(poles[k].multiplicity);
    PoleList others;
    for (std::size_t j = 0; j < poles.size(); j++)
    {
      if (j != k)
      {
        others.push_back(poles[j]);
      }
    }
    // Laurent coefficients of numerator / v at the pole: Taylor of numerator / w.
    auto num = numerator.taylor_at(poles[k].value);
    num.resize(std::max(num.size(), m), 0.0);
    const auto w = denominator_taylor(others, poles[k].value, m - 1);
    const auto s = series_mul(num, series_reciprocal(w, m - 1), m - 1);
    std::vector<Complex> res(m);
    for (std::size_t j = 1; j <= m; j++)
    {
      res[j - 1] = s[m - j];
    }
    pf.residues.push_back(std::move(res));
  }
  return pf;
}

}  // namespace ratmat
