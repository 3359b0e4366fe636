// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "xp_cli.hpp"

#include <cmath>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ratmat/bounds.hpp"
#include "ratmat/experiment.hpp"
#include "ratmat/json_io.hpp"
#include "ratmat/rom.hpp"

namespace ratmat::cli
{

namespace
{

struct BoundArgs
{
  std::string A;
  std::string b;
  std::string d;
  std::string poles;
  std::string S;
  std::string eig;
  std::string model_out;
  double t = 1.0;
  std::size_t mu = 50;
  std::size_t s = 11;
};

int cmd_run(const std::string &config, std::ostream &out)
{
  const ExperimentConfig cfg = config_from_json(read_json_file(config));
  const ExperimentResult res = run_experiment(cfg);
  const auto stat = [](const Stat &s) { return Json{{"mean", s.mean}, {"std", s.stddev}}; };
  out << Json{{"output", cfg.output},
              {"trials", res.records.size()},
              {"e0", stat(res.summary.e0)},
              {"e1", stat(res.summary.e1)},
              {"ratio", stat(res.summary.ratio)},
              {"bound_violations", res.summary.bound_violations}}
           .dump(2)
      << "\n";
  return 0;
}

int cmd_poles(const std::string &config, std::ostream &out)
{
  const ExperimentConfig cfg = config_from_json(read_json_file(config));
  const auto poles = derive_poles(cfg);
  out << Json{{"nodes", points_to_json(boundary_nodes(cfg))}, {"poles", points_to_json(poles)}}
           .dump(2)
      << "\n";
  return 0;
}

EigenFactorization factorize(const ComplexMatrix &A, const BoundArgs &args)
{
  if (!args.S.empty() || !args.eig.empty())
  {
    if (args.S.empty() || args.eig.empty())
    {
      throw Error("--S and --eig must be given together");
    }
    EigenFactorization fac(matrix_from_json(read_json_file(args.S)),
                           vector_from_json(read_json_file(args.eig)));
    if (fac.order() != static_cast<std::size_t>(A.rows()))
    {
      throw Error("factorization order does not match A");
    }
    const ComplexMatrix residual = A * fac.S() - fac.S() * fac.eigenvalues().asDiagonal();
    if (max_abs(residual) > 1e-8 * std::max(1.0, max_abs(A)) * std::max(1.0, max_abs(fac.S())))
    {
      throw Error("--S/--eig do not diagonalize A");
    }
    return fac;
  }
  if (static_cast<std::size_t>(A.rows()) > kEigSmallMaxOrder)
  {
    throw Error("A has order > 64; supply its eigen-decomposition with --S and --eig");
  }
  EigenFactorization fac = eig_small(A);
  if (!fac.usable())
  {
    throw Error("A is not numerically diagonalizable");
  }
  return fac;
}

int cmd_bound(const BoundArgs &args, std::ostream &out)
{
  const ComplexMatrix A = matrix_from_json(read_json_file(args.A));
  require_finite(A, "A");
  if (A.rows() != A.cols() || A.rows() == 0)
  {
    throw Error("A must be square and nonempty");
  }
  const ComplexVector b = vector_from_json(read_json_file(args.b));
  std::optional<ComplexVector> d;
  if (!args.d.empty())
  {
    d = vector_from_json(read_json_file(args.d));
  }
  if (b.size() != A.rows() || (d && d->size() != A.rows()))
  {
    throw Error("b and d must have the order of A");
  }
  const PoleSpec spec = pole_spec_from_json(read_json_file(args.poles));
  const Side side = d ? Side::Two : Side::One;
  spec.validate(side);

  if (b.norm() == 0.0)
  {
    BoundResult zero;
    zero.n_s = args.s;
    zero.n_mu = args.mu;
    Json j = bound_result_to_json(zero);
    j["e0"] = 0.0;
    j["n_hat"] = 0;
    j["kind"] = d ? "bilinear" : "vector";
    out << j.dump(2) << "\n";
    return 0;
  }

  const KrylovBasis basis = build_krylov_basis(A, b, spec, side, d);
  const ReducedModel model = reduce(A, b, d, basis.V, spec, side);
  if (!args.model_out.empty())
  {
    write_text_file(args.model_out, reduced_model_to_json(model).dump(2) + "\n");
  }
  const DiagonalizedMatrix M(A, factorize(A, args));
  double e0 = 0.0;
  if (d)
  {
    e0 = std::abs(scalar_impulse_exact(M.fac, b, *d, args.t) - impulse_reduced_scalar(model, args.t));
  }
  else
  {
    e0 = (vector_impulse_exact(M.fac, b, args.t) - impulse_reduced_vector(model, args.t)).norm();
  }
  ArnoldiBoundOptions opts;
  opts.t = args.t;
  opts.n_s = args.s;
  opts.n_mu = args.mu;
  const BoundResult r = arnoldi_error_bound(model, M, b, d, opts);
  Json j = bound_result_to_json(r);
  j["e0"] = e0;
  j["n_hat"] = model.order();
  j["kind"] = d ? "bilinear" : "vector";
  out << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Rational Krylov reduction and remainder bounds for matrix functions", "xp"};
  app.require_subcommand(1);

  std::string config;
  auto *run_cmd = app.add_subcommand("run", "run the random-spectrum experiment");
  run_cmd->add_option("--config", config, "experiment config (JSON)")->required();

  std::string poles_config;
  auto *poles_cmd = app.add_subcommand("poles", "print the boundary nodes and fitted poles");
  poles_cmd->add_option("--config", poles_config, "experiment config (JSON)")->required();

  BoundArgs args;
  auto *bound_cmd = app.add_subcommand("bound", "reduce a system and bound the impulse error");
  bound_cmd->add_option("--A", args.A, "system matrix (JSON)")->required();
  bound_cmd->add_option("--b", args.b, "input vector (JSON)")->required();
  bound_cmd->add_option("--d", args.d, "output vector (JSON); selects the two-sided bound");
  bound_cmd->add_option("--poles", args.poles, "pole spec (JSON)")->required();
  bound_cmd->add_option("--t", args.t, "time")->capture_default_str();
  bound_cmd->add_option("--mu", args.mu, "hull boundary samples")->capture_default_str();
  bound_cmd->add_option("--s", args.s, "s grid points")->capture_default_str();
  bound_cmd->add_option("--S", args.S, "eigenvector matrix of A (JSON)");
  bound_cmd->add_option("--eig", args.eig, "eigenvalues of A (JSON vector)");
  bound_cmd->add_option("--model-out", args.model_out, "write the reduced model (JSON)");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    return app.exit(e, out, err);
  }

  try
  {
    if (*run_cmd)
    {
      return cmd_run(config, out);
    }
    if (*poles_cmd)
    {
      return cmd_poles(poles_config, out);
    }
    return cmd_bound(args, out);
  }
  catch (const std::exception &e)
  {
    err << "xp: error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ratmat::cli
