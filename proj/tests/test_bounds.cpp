// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ratmat/bounds.hpp"

using namespace ratmat;
using namespace ratmat::testing;

namespace
{

constexpr double kPi = std::numbers::pi;

EigenFactorization diagonal_factorization(const std::vector<Complex> &ev)
{
  const auto n = static_cast<Eigen::Index>(ev.size());
  return EigenFactorization(ComplexMatrix::Identity(n, n),
                            Eigen::Map<const ComplexVector>(ev.data(), n));
}

// g = (v exp_t)^(N) / N! through the Cauchy formula on the test side.
DerivativeKernel cauchy_kernel(const PoleList &poles, std::size_t N, double t)
{
  const double fact = std::tgamma(static_cast<double>(N) + 1.0);
  return [poles, N, t, fact](Complex z)
  {
    const auto vf = [&](Complex x) { return denominator_value(poles, x) * std::exp(t * x); };
    return cauchy_derivative(vf, z, static_cast<int>(N), 1.0, 256) / fact;
  };
}

struct Instance
{
  Diagonalizable D;
  NodeList nodes;
  PoleList poles;
};

Instance random_instance(Rng &rng, std::size_t n, std::size_t n_nodes)
{
  Instance in{random_diagonalizable(rng, random_points(rng, n, -1.0, 0.0, -kPi, kPi)),
              NodeList(random_points(rng, n_nodes, -1.0, 0.0, -kPi, kPi)),
              {{Complex(2.0, 1.0), 1}, {Complex(1.5, -3.0), 2}}};
  return in;
}

BoundQuery exp_query(const Instance &in, std::size_t n_s = 11, std::size_t n_mu = 50)
{
  return BoundQuery::standard(in.nodes, in.poles, exp_kernel(in.poles, in.nodes.size(), 1.0), n_s,
                              n_mu);
}

}  // namespace

TEST(Kernels, ExpAndJetAgree)
{
  const PoleList poles{{1.0, 2}, {Complex(0.0, 3.0), 1}};
  const auto a = exp_kernel(poles, 5, 0.7);
  const auto b = jet_kernel(poles, 5, jets::exp(0.7));
  const auto c = cauchy_kernel(poles, 5, 0.7);
  for (const Complex z : {Complex(0.0), Complex(-0.5, 1.0), Complex(0.2, -2.0)})
  {
    EXPECT_LE(std::abs(a(z) - b(z)), 1e-12 * std::abs(a(z)));
    EXPECT_LE(std::abs(a(z) - c(z)), 1e-9 * std::abs(a(z)));
  }
  EXPECT_THROW(jet_kernel(poles, 2, jets::values_only([](Complex z) { return z; })), Error);
}

TEST(BoundQuery, Validation)
{
  const NodeList nodes{0.0, 1.0};
  const auto g = exp_kernel({}, 2, 1.0);
  auto q = BoundQuery::standard(nodes, {}, g);
  EXPECT_EQ(q.s_grid.size(), 11u);
  EXPECT_EQ(q.mu_samples.size(), 50u);
  EXPECT_NO_THROW(q.validate());

  auto bad = q;
  bad.s_grid = {0.0, 0.5};
  EXPECT_THROW(bad.validate(), Error);
  bad = q;
  bad.s_grid = {0.0, 1.0, 1.5};
  EXPECT_THROW(bad.validate(), Error);
  bad = q;
  bad.mu_samples.push_back(Complex(0.5, 0.1));
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_THROW(BoundQuery::standard(nodes, {{1.0, 1}}, g), Error);
  EXPECT_THROW(BoundQuery::standard(NodeList(), {}, g), Error);
}

TEST(BoundCore, ScalarFormula)
{
  const Complex a(-0.3, 0.8), z1(-0.6, -0.2);
  const DiagonalizedMatrix M(diagonal_factorization({a}));
  const auto q = BoundQuery::standard(NodeList{z1}, {}, exp_kernel({}, 1, 1.0));
  for (const double s : {0.0, 0.3, 1.0})
  {
    const Complex want = (a - z1) * std::exp((1.0 - s) * z1 + s * a);
    for (const auto route : {CoreRoute::PartialFractions, CoreRoute::Diagonal})
    {
      EXPECT_LE(std::abs(bound_core_matrix(q, M, s, z1, route)(0, 0) - want), 1e-14);
    }
  }
}

TEST(BoundCore, MatchesFactorizationOracle)
{
  Rng rng(21);
  const auto in = random_instance(rng, 6, 5);
  const DiagonalizedMatrix M(in.D.A, in.D.fac);
  const auto q = exp_query(in);
  const auto g = cauchy_kernel(merge_poles(in.poles), in.nodes.size(), 1.0);
  for (const double s : {0.0, 0.4, 1.0})
  {
    const Complex mu = q.mu_samples[7];
    ComplexVector h(6);
    for (Eigen::Index i = 0; i < 6; i++)
    {
      const Complex nu = in.D.ev(i);
      h(i) = in.nodes.omega(nu) / denominator_value(in.poles, nu) * g((1.0 - s) * mu + s * nu);
    }
    const ComplexMatrix want = in.D.S * h.asDiagonal() * in.D.S.inverse();
    EXPECT_LE(rel_max_diff(bound_core_matrix(q, M, s, mu, CoreRoute::PartialFractions), want), 1e-8);
    EXPECT_LE(rel_max_diff(bound_core_matrix(q, M, s, mu, CoreRoute::Diagonal), want), 1e-8);
  }
}

TEST(BoundCore, PoleOnSpectrumThrows)
{
  const DiagonalizedMatrix M(diagonal_factorization({0.0, 2.0}));
  const auto q = BoundQuery::standard(NodeList{0.5}, {{2.0, 1}}, exp_kernel({{2.0, 1}}, 1, 1.0));
  EXPECT_THROW(bound_core_matrix(q, M, 0.5, 0.5), PoleSpectrumError);
  EXPECT_THROW(bound_vector(q, M, ComplexVector::Ones(2)), PoleSpectrumError);
}

TEST(BoundVector, NodesOnSpectrumGiveZero)
{
  Rng rng(22);
  const std::vector<Complex> ev{-0.2, Complex(-0.5, 1.0), Complex(-0.9, -2.0)};
  const auto D = random_diagonalizable(rng, ev);
  const DiagonalizedMatrix M(D.A, D.fac);
  const PoleList poles{{2.0, 1}};
  const auto q = BoundQuery::standard(NodeList(ev), poles, exp_kernel(poles, 3, 1.0));
  const ComplexVector b = random_unit_vector(rng, 3);
  EXPECT_LE(bound_vector(q, M, b).value, 1e-10);
  EXPECT_LE(bound_bilinear(q, M, b, random_unit_vector(rng, 3)).value, 1e-10);
  EXPECT_LE(bound_matrix_norm(q, M).value, 1e-10);
}

TEST(BoundVector, OneByOneClosedForm)
{
  const DiagonalizedMatrix M(diagonal_factorization({1.0}));
  const auto q = BoundQuery::standard(NodeList{0.0}, {}, exp_kernel({}, 1, 1.0));
  const ComplexVector b = ComplexVector::Ones(1);
  const auto r = bound_vector(q, M, b);
  EXPECT_NEAR(r.value, std::numbers::e, 1e-14);
  EXPECT_EQ(r.argmax_s, 1.0);
  EXPECT_EQ(r.argmax_mu, Complex(0.0));
  EXPECT_GE(r.value, std::numbers::e - 1.0);
  EXPECT_NEAR(bound_bilinear(q, M, b, b).value, std::numbers::e, 1e-14);
  EXPECT_NEAR(bound_matrix_norm(q, M).value, std::numbers::e, 1e-13);
}

TEST(BoundBilinear, OrthogonalOutputGivesZero)
{
  // Omega(A) = diag(0, 0, 2) for nodes {0, 1}; the core has range e_3.
  const DiagonalizedMatrix M(diagonal_factorization({0.0, 1.0, 2.0}));
  const auto q = BoundQuery::standard(NodeList{0.0, 1.0}, {}, exp_kernel({}, 2, 1.0));
  const ComplexVector b = ComplexVector::Ones(3);
  ComplexVector d = ComplexVector::Zero(3);
  d(0) = 1.0;
  d(1) = Complex(0.0, 2.0);
  EXPECT_EQ(bound_bilinear(q, M, b, d).value, 0.0);
  EXPECT_GT(bound_vector(q, M, b).value, 0.0);
}

TEST(BoundMatrixNorm, DiagonalIsMaxOfScalars)
{
  const std::vector<Complex> ev{Complex(-0.1, 0.4), Complex(-0.7, -1.0), -0.4};
  const DiagonalizedMatrix M(diagonal_factorization(ev));
  const PoleList poles{{1.0, 1}};
  const NodeList nodes{Complex(-0.5, 0.5), Complex(-0.2, -0.5), -1.0};
  const auto q = BoundQuery::standard(nodes, poles, exp_kernel(poles, 3, 1.0));
  const auto g = cauchy_kernel(poles, 3, 1.0);
  double want = 0.0;
  for (const Complex mu : q.mu_samples)
  {
    for (const double s : q.s_grid)
    {
      for (const Complex nu : ev)
      {
        want = std::max(want, std::abs(nodes.omega(nu) / denominator_value(poles, nu) *
                                       g((1.0 - s) * mu + s * nu)));
      }
    }
  }
  EXPECT_LE(std::abs(bound_matrix_norm(q, M).value - want), 1e-9 * want);
}

TEST(BoundRoutes, PartialFractionsAndDiagonalAgree)
{
  Rng rng(23);
  for (int trial = 0; trial < 5; trial++)
  {
    const auto in = random_instance(rng, 10, 6);
    const DiagonalizedMatrix M(in.D.A, in.D.fac);
    const auto q = exp_query(in);
    const ComplexVector b = random_unit_vector(rng, 10);
    const ComplexVector d = random_unit_vector(rng, 10);
    const auto a1 = bound_vector(q, M, b, CoreRoute::PartialFractions);
    const auto a2 = bound_vector(q, M, b, CoreRoute::Diagonal);
    EXPECT_LE(std::abs(a1.value - a2.value), 1e-8 * a2.value);
    const auto c1 = bound_bilinear(q, M, b, d, CoreRoute::PartialFractions);
    const auto c2 = bound_bilinear(q, M, b, d, CoreRoute::Diagonal);
    EXPECT_LE(std::abs(c1.value - c2.value), 1e-8 * c2.value);
    const auto m1 = bound_matrix_norm(q, M, CoreRoute::PartialFractions);
    const auto m2 = bound_matrix_norm(q, M, CoreRoute::Diagonal);
    EXPECT_LE(std::abs(m1.value - m2.value), 1e-8 * m2.value);
  }
}

TEST(BoundVector, DominatesTrueError)
{
  Rng rng(24);
  for (int trial = 0; trial < 20; trial++)
  {
    const auto in = random_instance(rng, 8, 1 + trial % 7);
    const DiagonalizedMatrix M(in.D.A, in.D.fac);
    const auto r = rational_interpolate_fixed_denominator(jets::exp(), in.nodes, in.poles);
    const ComplexVector b = random_unit_vector(rng, 8);
    const ComplexVector d = random_unit_vector(rng, 8);
    const ComplexVector err = expm_taylor(in.D.A) * b - rational_apply(r, in.D.A, b);
    const auto q = exp_query(in);
    EXPECT_GE(bound_vector(q, M, b).value, err.norm() * (1.0 - 1e-6)) << "trial " << trial;
    EXPECT_GE(bound_bilinear(q, M, b, d).value, std::abs(d.dot(err)) * (1.0 - 1e-6));
  }
}

TEST(BoundVector, GridRefinement)
{
  Rng rng(25);
  for (int trial = 0; trial < 5; trial++)
  {
    const auto in = random_instance(rng, 8, 5);
    const DiagonalizedMatrix M(in.D.A, in.D.fac);
    const ComplexVector b = random_unit_vector(rng, 8);
    const double coarse = bound_vector(exp_query(in, 11, 50), M, b).value;
    const double fine = bound_vector(exp_query(in, 21, 100), M, b).value;
    EXPECT_GE(fine, coarse * (1.0 - 1e-6));
  }
}

TEST(BoundNorms, Domination)
{
  Rng rng(26);
  for (int trial = 0; trial < 5; trial++)
  {
    const auto in = random_instance(rng, 6, 4);
    const DiagonalizedMatrix M(in.D.A, in.D.fac);
    const auto q = exp_query(in);
    const ComplexVector b = random_unit_vector(rng, 6);
    const ComplexVector d = random_vector(rng, 6);
    const double vec = bound_vector(q, M, b).value;
    EXPECT_GE(bound_matrix_norm(q, M).value, vec * (1.0 - 1e-10));
    EXPECT_LE(bound_bilinear(q, M, b, d).value, vec * d.norm() * (1.0 + 1e-10));
  }
}

TEST(BoundPade, SingleNode)
{
  Rng rng(27);
  const auto D = random_diagonalizable(rng, random_points(rng, 5, -1.0, 0.0, -1.0, 1.0));
  const DiagonalizedMatrix M(D.A, D.fac);
  const Complex z0(-0.5, 0.1);
  const auto pb = bound_pade(M, z0, 0, 0, jets::exp());
  const ComplexMatrix shifted = D.A - z0 * ComplexMatrix::Identity(5, 5);
  double want = 0.0;
  for (const double s : uniform_grid(11))
  {
    want = std::max(want, spectral_norm(shifted * std::exp((1.0 - s) * z0) * expm_taylor(D.A, s)));
  }
  EXPECT_LE(std::abs(pb.bound.value - want), 1e-8 * want);
}

TEST(BoundPade, OneOneDominatesError)
{
  const DiagonalizedMatrix M(diagonal_factorization({0.1, -0.1}));
  const auto pb = bound_pade(M, 0.0, 1, 1, jets::exp());
  double err = 0.0;
  for (const double x : {0.1, -0.1})
  {
    err = std::max(err, std::abs(std::exp(x) - pb.approximant(x)));
  }
  EXPECT_GT(err, 0.0);
  EXPECT_GE(pb.bound.value, err);

  const Complex z0(0.2, 0.3);
  const DiagonalizedMatrix Z(diagonal_factorization({z0, z0, z0}));
  EXPECT_EQ(bound_pade(Z, z0, 1, 1, jets::exp()).bound.value, 0.0);
}

TEST(LogNorm, Examples)
{
  ComplexMatrix A = ComplexMatrix::Zero(2, 2);
  A(0, 0) = 1.0;
  A(1, 1) = -2.0;
  EXPECT_NEAR(log_norm(A), 1.0, 1e-14);
  ComplexMatrix J = ComplexMatrix::Zero(2, 2);
  J(0, 1) = 1.0;
  EXPECT_NEAR(log_norm(J), 0.5, 1e-14);
  Rng rng(28);
  const ComplexMatrix B = random_matrix(rng, 7, 7);
  const Complex c(0.3, 0.7);
  EXPECT_NEAR(log_norm(B + c * ComplexMatrix::Identity(7, 7)), log_norm(B) + c.real(), 1e-10);
  const auto [lo, hi] = rayleigh_range(B, 2000, rng);
  EXPECT_GE(log_norm(B), hi);
  (void)lo;
}

TEST(NumericalRangeBox, Examples)
{
  const auto box = numerical_range_box(diagonal_factorization({Complex(0, 1), Complex(0, -1), 1.0}).reconstruct());
  const std::vector<Complex> want{Complex(0, -1), Complex(1, -1), Complex(1, 1), Complex(0, 1)};
  ASSERT_EQ(box.size(), 4u);
  for (std::size_t k = 0; k < 4; k++)
  {
    EXPECT_LE(std::abs(box.vertices()[k] - want[k]), 1e-11);
  }

  const Complex c(0.4, -0.3);
  const auto pt = numerical_range_box(c * ComplexMatrix::Identity(4, 4));
  for (const Complex v : pt.vertices())
  {
    EXPECT_LE(std::abs(v - c), 1e-10);
  }
  EXPECT_THROW(numerical_range_box(ComplexMatrix(2, 3)), Error);
  EXPECT_THROW(numerical_range_box(ComplexMatrix::Identity(2, 2), std::vector<double>{}), Error);
}

TEST(NumericalRangeBox, ContainsSpectrumAndRayleighSamples)
{
  Rng rng(29);
  const std::vector<double> angles{0.0, -kPi / 2, -kPi / 4, -3 * kPi / 4};
  for (int trial = 0; trial < 10; trial++)
  {
    const ComplexMatrix A = random_matrix(rng, 12, 12);
    const auto box = numerical_range_box(A, angles);
    const auto fac = eig_small(A);
    for (Eigen::Index i = 0; i < 12; i++)
    {
      EXPECT_TRUE(box.contains(fac.eigenvalues()(i), 1e-8));
    }
    for (int k = 0; k < 200; k++)
    {
      const ComplexVector z = random_unit_vector(rng, 12);
      EXPECT_TRUE(box.contains(z.dot(A * z), 1e-8));
    }
    EXPECT_LE(box.area(), numerical_range_box(A).area() + 1e-10);
  }
}

TEST(NumericalRangeBox, Homogeneity)
{
  Rng rng(30);
  const ComplexMatrix A = random_matrix(rng, 6, 6);
  const Complex alpha = std::polar(1.7, 0.6);
  const std::vector<double> angles{0.0, -kPi / 2, -kPi / 3};
  std::vector<double> rotated;
  for (const double phi : angles)
  {
    rotated.push_back(phi + std::arg(alpha));
  }
  const auto a = numerical_range_box(A, angles);
  const auto b = numerical_range_box(alpha * A, rotated);
  ASSERT_EQ(a.size(), b.size());
  for (const Complex v : a.vertices())
  {
    double best = 1e300;
    for (const Complex w : b.vertices())
    {
      best = std::min(best, std::abs(alpha * v - w));
    }
    EXPECT_LE(best, 1e-10 * std::max(1.0, std::abs(alpha * v)));
  }
}

TEST(Crouzeix, SinglePointIsZero)
{
  const Complex z0(-0.3, 0.2);
  const auto q = BoundQuery::standard(NodeList{z0, z0, z0}, {{2.0, 1}}, exp_kernel({{2.0, 1}}, 3, 1.0));
  EXPECT_EQ(crouzeix_scalar_bound(q, ConvexPolygon({z0}), 1.0, 11.08), 0.0);
}

TEST(Crouzeix, SelfAdjointSegment)
{
  // Eigenvalues on the segment sample points, so the scalar max over the
  // segment dominates the matrix norm of the core exactly.
  const double a = -1.0, b = 0.5;
  std::vector<Complex> ev;
  for (const int j : {0, 7, 20, 33, 49})
  {
    ev.push_back(a + (b - a) * j / 49.0);
  }
  Rng rng(31);
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, 5, 5));
  const ComplexMatrix Q = qr.householderQ();
  const ComplexVector evv = Eigen::Map<const ComplexVector>(ev.data(), 5);
  const EigenFactorization fac(Q, evv, Q.adjoint());
  const DiagonalizedMatrix M(fac);
  const PoleList poles{{2.0, 1}};
  const auto q = BoundQuery::standard(NodeList{-0.8, -0.1, 0.3}, poles, exp_kernel(poles, 3, 1.0));
  const double cz = crouzeix_scalar_bound(q, ConvexPolygon({a, b}), 1.0, 1.0, 50);
  EXPECT_GE(cz, bound_matrix_norm(q, M).value * (1.0 - 1e-10));
  EXPECT_NEAR(crouzeix_scalar_bound(q, ConvexPolygon({a, b}), 2.0, 11.08, 50), 22.16 * cz, 1e-10 * cz);
}

TEST(Crouzeix, NormalMatrixOnItsHull)
{
  std::vector<Complex> ev;
  for (int k = 0; k < 7; k++)
  {
    ev.push_back(Complex(-0.5, 0.0) + std::polar(0.6, 2 * kPi * k / 7));
  }
  Rng rng(32);
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(rng, 7, 7));
  const ComplexMatrix Q = qr.householderQ();
  const EigenFactorization fac(Q, Eigen::Map<const ComplexVector>(ev.data(), 7), Q.adjoint());
  const DiagonalizedMatrix M(fac);
  const PoleList poles{{Complex(1.0, 1.0), 2}};
  const NodeList nodes{Complex(-0.4, 0.1), Complex(-0.7, -0.2)};
  const auto q = BoundQuery::standard(nodes, poles, exp_kernel(poles, 2, 1.0));
  const double cz = crouzeix_scalar_bound(q, convex_hull(ev), 1.0, 1.0, 50);
  EXPECT_GE(cz, bound_matrix_norm(q, M).value * (1.0 - 1e-10));
}

TEST(Crouzeix, PoleOnBoundaryThrows)
{
  const PoleList poles{{1.0, 1}};
  const auto q = BoundQuery::standard(NodeList{0.0}, poles, exp_kernel(poles, 1, 1.0));
  EXPECT_THROW(crouzeix_scalar_bound(q, ConvexPolygon({0.0, 1.0}), 1.0, 2.0), PoleSpectrumError);
  EXPECT_THROW(crouzeix_scalar_bound(q, ConvexPolygon({0.0, 0.5}), 1.0, 0.0), Error);
}
