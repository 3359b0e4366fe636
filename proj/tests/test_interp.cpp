// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ratmat/interp.hpp"

using namespace ratmat;
using namespace ratmat::testing;

namespace
{

const double e = std::numbers::e;

double rel(Complex got, Complex want)
{
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

NodeList random_nodes(Rng &rng, std::size_t N, double scale, bool allow_repeats)
{
  std::vector<Complex> z;
  while (z.size() < N)
  {
    if (allow_repeats && !z.empty() && uniform(rng, 0.0, 1.0) < 0.3)
    {
      z.push_back(z[static_cast<std::size_t>(uniform(rng, 0.0, 1.0) * static_cast<double>(z.size()))]);
    }
    else
    {
      z.push_back(random_complex(rng, scale));
    }
  }
  return NodeList(z);
}

}  // namespace

TEST(NodeList, CanonicalizesConfluentNodes)
{
  const NodeList n{0.0, 1.0, 1e-14, 2.0, 1.0};
  EXPECT_EQ(n.nodes(), (std::vector<Complex>{0.0, 0.0, 1.0, 1.0, 2.0}));
  const auto d = n.distinct();
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[0].multiplicity, 2);
  EXPECT_EQ(n.max_multiplicity(), 2);
  EXPECT_EQ(n.omega(3.0), Complex(3.0 * 3.0 * 2.0 * 2.0 * 1.0));
}

TEST(JetFunction, DerivativesMatchFiniteDifferences)
{
  const JetFunction f = jets::times_denominator({{0.5, 2}, {-1.0i, 1}}, jets::exp(0.7));
  Rng rng(1);
  for (int k = 0; k < 10; k++)
  {
    const Complex z = random_complex(rng);
    const auto d = f.eval(z, 1);
    const double h = 1e-6;
    const Complex fd = (f(z + h) - f(z - h)) / (2.0 * h);
    EXPECT_LE(rel(fd, d[1]), 1e-8);
  }
  EXPECT_THROW((void)jets::values_only([](Complex z) { return z; }).eval(0.0, 1), Error);
}

TEST(DividedDifferences, Examples)
{
  EXPECT_LE(rel(divided_differences(jets::exp(), NodeList{0.0, 0.0}).back(), 1.0), 1e-15);
  const JetFunction sq = jets::polynomial(Polynomial({0.0, 0.0, 1.0}));
  EXPECT_LE(rel(divided_differences(sq, NodeList{0.0, 1.0}).back(), 1.0), 1e-15);
  const Complex want = (e * e - 2.0 * e + 1.0) / 2.0;
  EXPECT_LE(rel(divided_differences(jets::exp(), NodeList{0.0, 1.0, 2.0}).back(), want), 1e-14);
}

TEST(DividedDifferences, PermutationSymmetry)
{
  Rng rng(2);
  const JetFunction f = jets::exp(Complex(0.8, 0.3));
  for (int trial = 0; trial < 20; trial++)
  {
    std::vector<Complex> z;
    for (int k = 0; k < 6; k++)
    {
      z.push_back(random_complex(rng));
    }
    const Complex ref = divided_differences(f, NodeList(z)).back();
    std::shuffle(z.begin(), z.end(), rng);
    EXPECT_LE(std::abs(divided_differences(f, NodeList(z)).back() - ref),
              1e-10 * std::abs(ref));
  }
}

TEST(DividedDifferences, ConfluentEqualsScaledDerivative)
{
  const Complex z0(0.3, -0.4);
  const Complex alpha(1.2, 0.5);
  double fact = 1.0;
  for (int k = 0; k <= 8; k++)
  {
    if (k > 0)
    {
      fact *= k;
    }
    const std::vector<Complex> z(static_cast<std::size_t>(k) + 1, z0);
    const Complex want = std::pow(alpha, k) * std::exp(alpha * z0) / fact;
    EXPECT_LE(std::abs(divided_differences(jets::exp(alpha), NodeList(z)).back() - want),
              1e-10 * std::abs(want));
  }
}

TEST(DividedDifferences, MissingDerivativeIsAnError)
{
  const JetFunction f = jets::values_only([](Complex z) { return z * z; });
  EXPECT_THROW(divided_differences(f, NodeList{1.0, 1.0}), Error);
}

TEST(GenocchiHermite, Examples)
{
  EXPECT_LE(rel(genocchi_hermite_oracle(jets::exp(), NodeList{0.0, 0.0}, 10), 1.0), 1e-14);
  const JetFunction lin = jets::polynomial(Polynomial({2.0, 3.0}));
  EXPECT_LE(std::abs(genocchi_hermite_oracle(lin, NodeList{0.0, 1.0i, 2.0}, 10)), 1e-15);
  const Complex dd = divided_differences(jets::exp(), NodeList{0.0, 1.0, 2.0}).back();
  EXPECT_LE(rel(genocchi_hermite_oracle(jets::exp(), NodeList{0.0, 1.0, 2.0}, 200), dd), 1e-6);
  EXPECT_THROW(genocchi_hermite_oracle(jets::exp(), NodeList{0.0, 1.0, 2.0, 3.0, 4.0}, 4), Error);
}

TEST(ContourOracle, Examples)
{
  const JetFunction one = jets::polynomial(Polynomial::constant(1.0));
  EXPECT_LE(std::abs(contour_divdiff_oracle(one, NodeList{0.0, 1.0}, 0.5, 2.0, 64)), 1e-15);
  const JetFunction id = jets::polynomial(Polynomial({0.0, 1.0}));
  EXPECT_LE(rel(contour_divdiff_oracle(id, NodeList{0.0, 1.0}, 0.5, 2.0, 64), 1.0), 1e-14);
  const Complex dd = divided_differences(jets::exp(), NodeList{0.0, 1.0, 2.0}).back();
  EXPECT_LE(rel(contour_divdiff_oracle(jets::exp(), NodeList{0.0, 1.0, 2.0}, 0.0, 4.0, 256), dd),
            1e-10);
  EXPECT_THROW(contour_divdiff_oracle(jets::exp(), NodeList{0.0, 3.0}, 0.0, 2.0, 64), Error);
}

TEST(Oracles, AgreeOnRandomInstances)
{
  Rng rng(4);
  for (int trial = 0; trial < 30; trial++)
  {
    const JetFunction f = jets::exp(random_complex(rng));
    const NodeList small = random_nodes(rng, 1 + trial % 4, 0.8, true);
    const Complex dd = divided_differences(f, small).back();
    EXPECT_LE(std::abs(genocchi_hermite_oracle(f, small, 60) - dd), 1e-6 * std::max(1.0, std::abs(dd)));
    const NodeList big = random_nodes(rng, 1 + trial % 8, 0.8, true);
    const Complex dd2 = divided_differences(f, big).back();
    EXPECT_LE(std::abs(contour_divdiff_oracle(f, big, 0.0, 2.5, 256) - dd2),
              1e-10 * std::max(1.0, std::abs(dd2)));
  }
}

TEST(HermiteInterpolate, Examples)
{
  const auto p = hermite_interpolate(jets::exp(), NodeList{0.0, 0.0, 0.0}).to_polynomial();
  EXPECT_LE(rel(p.coeffs()[0], 1.0), 1e-15);
  EXPECT_LE(rel(p.coeffs()[1], 1.0), 1e-15);
  EXPECT_LE(rel(p.coeffs()[2], 0.5), 1e-15);

  const Polynomial cube({0.0, 0.0, 0.0, 1.0});
  const auto q = hermite_interpolate(jets::polynomial(cube), NodeList{0.0, 1.0, 2.0, 3.0});
  const auto qc = q.to_polynomial().coeffs();
  ASSERT_EQ(qc.size(), 4u);
  for (std::size_t j = 0; j < 4; j++)
  {
    EXPECT_LE(std::abs(qc[j] - cube.coeffs()[j]), 1e-13);
  }

  const auto r = hermite_interpolate(jets::exp(), NodeList{0.0, 1.0}).to_polynomial();
  EXPECT_LE(rel(r.coeffs()[0], 1.0), 1e-15);
  EXPECT_LE(rel(r.coeffs()[1], e - 1.0), 1e-15);
}

TEST(HermiteInterpolate, ReproducesAllConditions)
{
  Rng rng(5);
  for (int trial = 0; trial < 20; trial++)
  {
    const JetFunction f = jets::exp(random_complex(rng));
    const NodeList nodes = random_nodes(rng, 8, 1.0, true);
    const NewtonForm p = hermite_interpolate(f, nodes);
    double fmax = 0.0;
    for (const auto &g : nodes.distinct())
    {
      fmax = std::max(fmax, std::abs(f(g.value)));
    }
    for (const auto &g : nodes.distinct())
    {
      const auto want = f.eval(g.value, g.multiplicity - 1);
      const auto got = p.taylor(g.value, static_cast<std::size_t>(g.multiplicity - 1));
      double fact = 1.0;
      for (int j = 0; j < g.multiplicity; j++)
      {
        if (j > 0)
        {
          fact *= j;
        }
        EXPECT_LE(std::abs(got[static_cast<std::size_t>(j)] * fact - want[static_cast<std::size_t>(j)]),
                  1e-9 * fmax);
      }
    }
  }
}

TEST(RationalFixedDenominator, Examples)
{
  const NodeList nodes{0.5, 1.0i};
  const auto r0 = rational_interpolate_fixed_denominator(jets::exp(), nodes, {});
  const auto p0 = hermite_interpolate(jets::exp(), nodes);
  EXPECT_EQ(r0.numerator.coefficients, p0.coefficients);

  const auto r1 = rational_interpolate_fixed_denominator(jets::simple_pole(-1.0), NodeList{0.0},
                                                         {{-1.0, 1}});
  EXPECT_LE(rel(r1.numerator(0.7), 1.0), 1e-15);
  EXPECT_LE(rel(r1(2.0), 1.0 / 3.0), 1e-15);

  // v(z) = z - 2 is -2 (1 - z/2); u interpolates the jet of v e^z.
  const auto r2 = rational_interpolate_fixed_denominator(jets::exp(), NodeList{0.0, 0.0, 0.0},
                                                         {{2.0, 1}});
  const auto u = r2.numerator.to_polynomial().coeffs();
  EXPECT_LE(std::abs(u[0] + 2.0), 1e-15);
  EXPECT_LE(std::abs(u[1] + 1.0), 1e-15);
  EXPECT_LE(std::abs(u[2]), 1e-15);

  EXPECT_THROW(rational_interpolate_fixed_denominator(jets::exp(), NodeList{0.0, 1.0}, {{1.0, 1}}),
               Error);
}

TEST(RationalFixedDenominator, BothConditionSetsHold)
{
  Rng rng(6);
  for (int trial = 0; trial < 20; trial++)
  {
    const JetFunction f = jets::exp(random_complex(rng));
    const NodeList nodes = random_nodes(rng, 6, 1.0, true);
    const PoleList poles{{random_complex(rng) + 3.0, 1}, {random_complex(rng) - 3.0, 2}};
    const auto r = rational_interpolate_fixed_denominator(f, nodes, poles);
    const JetFunction vf = jets::times_denominator(poles, f);
    for (const auto &g : nodes.distinct())
    {
      const auto m = static_cast<std::size_t>(g.multiplicity);
      const auto rt = r.taylor(g.value, m - 1);
      const auto ut = r.numerator.taylor(g.value, m - 1);
      const auto fj = f.eval(g.value, g.multiplicity - 1);
      const auto vfj = vf.eval(g.value, g.multiplicity - 1);
      double fact = 1.0;
      for (std::size_t j = 0; j < m; j++)
      {
        if (j > 0)
        {
          fact *= static_cast<double>(j);
        }
        EXPECT_LE(std::abs(rt[j] * fact - fj[j]), 1e-9 * std::max(1.0, std::abs(fj[0])));
        EXPECT_LE(std::abs(ut[j] * fact - vfj[j]), 1e-9 * std::max(1.0, std::abs(vfj[0])));
      }
    }
  }
}

TEST(Remainder, Examples)
{
  const auto r = rational_interpolate_fixed_denominator(jets::exp(), NodeList{0.0, 1.0i}, {{3.0, 1}});
  EXPECT_EQ(remainder_scalar(jets::exp(), r, 1.0i), Complex(0.0));

  const auto p = rational_interpolate_fixed_denominator(jets::exp(), NodeList{0.0}, {});
  EXPECT_LE(rel(remainder_scalar(jets::exp(), p, 1.0), e - 1.0), 1e-15);
  EXPECT_LE(rel(std::exp(1.0) - p(1.0), e - 1.0), 1e-15);

  const auto pade = rational_interpolate_fixed_denominator(jets::exp(), NodeList{0.0, 0.0, 0.0},
                                                           {{2.0, 1}});
  const Complex lhs = e - pade(1.0);
  EXPECT_LE(std::abs(lhs - (e - 3.0)), 1e-14);
  EXPECT_LE(std::abs(remainder_scalar(jets::exp(), pade, 1.0) - lhs), 1e-10);

  EXPECT_THROW(remainder_scalar(jets::exp(), pade, 2.0), Error);
}

TEST(Remainder, IdentityOnProbeGrid)
{
  Rng rng(7);
  for (int trial = 0; trial < 30; trial++)
  {
    const JetFunction f = jets::exp(random_complex(rng));
    const NodeList nodes = random_nodes(rng, 1 + trial % 8, 1.0, true);
    const PoleList poles{{random_complex(rng) + 2.5, 1 + trial % 2}};
    const auto r = rational_interpolate_fixed_denominator(f, nodes, poles);
    for (int k = 0; k < 5; k++)
    {
      const Complex z = random_complex(rng, 1.2);
      const Complex lhs = f(z) - r(z);
      EXPECT_LE(std::abs(lhs - remainder_scalar(f, r, z)), 1e-9 * (1.0 + std::abs(f(z))));
    }
  }
}

TEST(LinearizedFit, RecoversExactRational)
{
  const std::vector<std::pair<Complex, Complex>> s{{0.0, 1.0}, {1.0, 0.5}};
  const auto fit = linearized_rational_fit(s, 0, 1);
  ASSERT_EQ(fit.poles.size(), 1u);
  EXPECT_LE(std::abs(fit.poles[0] + 1.0), 1e-14);
  EXPECT_LE(rel(fit.interpolant(3.0), 0.25), 1e-14);
  const auto &dc = fit.denominator.coeffs();
  EXPECT_NEAR(std::abs(dc[0]) * std::abs(dc[0]) + std::abs(dc[1]) * std::abs(dc[1]), 1.0, 1e-14);
  EXPECT_GT(dc[1].real(), 0.0);
  EXPECT_EQ(dc[1].imag(), 0.0);
  EXPECT_LE(std::abs(fit.numerator(3.0) / fit.denominator(3.0) - 0.25), 1e-14);
}

TEST(LinearizedFit, ConstantDegenerate)
{
  const std::vector<std::pair<Complex, Complex>> s{{0.4, Complex(2.0, 1.0)}};
  const auto fit = linearized_rational_fit(s, 0, 0);
  EXPECT_TRUE(fit.poles.empty());
  EXPECT_LE(rel(fit.interpolant(5.0), Complex(2.0, 1.0)), 1e-15);
  EXPECT_NEAR(std::abs(fit.denominator.coeffs()[0]), 1.0, 1e-15);
}

TEST(LinearizedFit, ExpOnRectangleBoundary)
{
  std::vector<std::pair<Complex, Complex>> s;
  for (const double re : {0.0, -1.0})
  {
    for (int k = -4; k <= 4; k++)
    {
      const Complex z(re, k * std::numbers::pi / 4);
      s.emplace_back(z, std::exp(z));
    }
  }
  const auto fit = linearized_rational_fit(s, 9, 8);
  EXPECT_EQ(fit.poles.size(), 8u);
  EXPECT_LE(fit.max_residual, 1e-8);
  for (const auto &[z, fz] : s)
  {
    EXPECT_LE(std::abs(fit.numerator(z) / fit.denominator(z) - fz), 1e-8);
  }
}

TEST(LinearizedFit, ConjugateSymmetricSamplesGiveConjugatePoles)
{
  std::vector<std::pair<Complex, Complex>> s;
  for (const double re : {0.0, -1.0})
  {
    for (int k = -4; k <= 4; k++)
    {
      const Complex z(re, k * std::numbers::pi / 4);
      s.emplace_back(z, std::exp(z));
    }
  }
  const auto fit = linearized_rational_fit(s, 9, 8);
  for (const Complex p : fit.poles)
  {
    double best = 1e300;
    for (const Complex q : fit.poles)
    {
      best = std::min(best, std::abs(std::conj(p) - q));
    }
    EXPECT_LE(best, 1e-8 * std::abs(p));
  }
  for (const Complex c : fit.denominator.coeffs())
  {
    EXPECT_LE(std::abs(c.imag()), 1e-12);
  }
}

TEST(LinearizedFit, UnattainablePointCarriesIndex)
{
  // z -> 1 / z cannot take a finite value at 0 with degrees [0/1] through
  // (0, 1) and (1, 1): the null vector is u = 0, v = z.
  const std::vector<std::pair<Complex, Complex>> s{{1.0, 0.0}, {0.0, 1.0}};
  try
  {
    linearized_rational_fit(s, 0, 1);
    FAIL() << "expected unattainable point";
  }
  catch (const UnattainablePointError &err)
  {
    EXPECT_EQ(err.index(), 1u);
  }
  const std::vector<std::pair<Complex, Complex>> dup{{1.0, 0.0}, {1.0, 1.0}};
  EXPECT_THROW(linearized_rational_fit(dup, 0, 1), Error);
  EXPECT_THROW(linearized_rational_fit(dup, 1, 1), Error);
}

TEST(Pade, OneOneOfExp)
{
  const auto r = pade_approximant(jets::exp(), 0.0, 1, 1);
  ASSERT_EQ(r.poles.size(), 1u);
  EXPECT_LE(std::abs(r.poles[0].value - 2.0), 1e-13);
  const Complex z(0.3, 0.2);
  EXPECT_LE(rel(r(z), (1.0 + z / 2.0) / (1.0 - z / 2.0)), 1e-13);
}

TEST(PartialFractions, Examples)
{
  const PoleList poles{{1.0, 2}, {-2.0, 1}};
  const auto pf = partial_fractions(denominator_polynomial(poles), poles);
  EXPECT_LE(std::abs(pf.quotient(0.3) - 1.0), 1e-14);
  for (const auto &res : pf.residues)
  {
    for (const Complex c : res)
    {
      EXPECT_LE(std::abs(c), 1e-13);
    }
  }

  const auto pf2 = partial_fractions(Polynomial({0.0, 0.0, 1.0}), {{1.0, 1}});
  EXPECT_LE(std::abs(pf2.quotient.coeffs()[0] - 1.0), 1e-15);
  EXPECT_LE(std::abs(pf2.quotient.coeffs()[1] - 1.0), 1e-15);
  EXPECT_LE(std::abs(pf2.residues[0][0] - 1.0), 1e-15);
  EXPECT_THROW(partial_fractions(Polynomial({1.0}), {{1.0, 1}, {1.0, 1}}), Error);
}

TEST(PartialFractions, ProbeIdentity)
{
  Rng rng(8);
  std::vector<Complex> roots;
  for (int k = 0; k < 9; k++)
  {
    roots.push_back(random_complex(rng));
  }
  const Polynomial omega = Polynomial::from_roots(roots);
  PoleList simple;
  for (int k = 0; k < 8; k++)
  {
    simple.push_back({random_complex(rng, 3.0) + 4.0, 1});
  }
  const PoleList multiple{{2.0 + 1.0i, 3}, {-3.0, 2}};
  for (const auto &poles : {simple, multiple})
  {
    const auto pf = partial_fractions(omega, poles);
    const Polynomial v = denominator_polynomial(poles);
    for (int k = 0; k < 20; k++)
    {
      const Complex z = random_complex(rng, 2.0);
      const Complex want = omega(z) / v(z);
      EXPECT_LE(std::abs(pf(z) - want), 1e-8 * std::max(1.0, std::abs(want)));
    }
  }
  // Simple poles: residue = Omega(pole) / v'(pole).
  const auto pf = partial_fractions(omega, simple);
  const Polynomial dv = denominator_polynomial(simple).derivative();
  EXPECT_EQ(pf.quotient.degree(), 1u);
  for (std::size_t k = 0; k < simple.size(); k++)
  {
    const Complex want = omega(simple[k].value) / dv(simple[k].value);
    EXPECT_LE(std::abs(pf.residues[k][0] - want), 1e-8 * std::abs(want));
  }
}
