// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#include "ratmat/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ratmat/json_io.hpp"
#include "ratmat/matfun.hpp"

namespace ratmat
{

void ExperimentConfig::validate() const
{
  const auto fail = [](const std::string &what) { throw Error("config: " + what); };
  if (n == 0)
  {
    fail("n must be positive");
  }
  if (trials == 0)
  {
    fail("trials must be at least 1");
  }
  const auto &r = rectangle;
  if (!std::isfinite(r.re_min) || !std::isfinite(r.re_max) || !std::isfinite(r.im_min) ||
      !std::isfinite(r.im_max))
  {
    fail("rectangle bounds must be finite");
  }
  if (!(r.re_min < r.re_max) || !(r.im_min < r.im_max))
  {
    fail("rectangle is degenerate");
  }
  if (boundary_nodes < 4 || boundary_nodes % 2 != 0)
  {
    fail("boundary_nodes must be even and at least 4");
  }
  if (fit_L + fit_M + 1 != boundary_nodes)
  {
    fail("fit_degree [L, M] needs L + M + 1 == boundary_nodes");
  }
  if (fit_M == 0)
  {
    fail("fit_degree M must be positive");
  }
  if (n < fit_M + 1)
  {
    fail("n is smaller than the reduced order M + 1");
  }
  if (full_basis && n > kEigSmallMaxOrder)
  {
    fail("full_basis needs n <= 64");
  }
  if (mu_samples == 0)
  {
    fail("mu_samples must be positive");
  }
  if (s_samples < 2)
  {
    fail("s_samples must be at least 2");
  }
  if (!std::isfinite(t))
  {
    fail("t must be finite");
  }
  if (output.empty())
  {
    fail("output path is empty");
  }
}

std::vector<Complex> boundary_nodes(const ExperimentConfig &cfg)
{
  const auto &r = cfg.rectangle;
  const std::size_t levels = cfg.boundary_nodes / 2;
  std::vector<Complex> z;
  for (const double re : {r.re_max, r.re_min})
  {
    for (std::size_t k = 0; k < levels; k++)
    {
      const double im = r.im_min + (r.im_max - r.im_min) * static_cast<double>(k) /
                                     static_cast<double>(levels - 1);
      z.emplace_back(re, im);
    }
  }
  return z;
}

std::vector<Complex> derive_poles(const ExperimentConfig &cfg)
{
  cfg.validate();
  std::vector<std::pair<Complex, Complex>> samples;
  for (const Complex z : boundary_nodes(cfg))
  {
    samples.emplace_back(z, std::exp(cfg.t * z));
  }
  const RationalFit fit = linearized_rational_fit(samples, cfg.fit_L, cfg.fit_M);
  if (fit.poles.size() != cfg.fit_M)
  {
    throw Error("derive_poles: the fit has fewer than M poles");
  }
  const auto &r = cfg.rectangle;
  const double slack = 1e-12 * std::max({1.0, std::abs(r.re_min), std::abs(r.re_max),
                                         std::abs(r.im_min), std::abs(r.im_max)});
  for (const Complex p : fit.poles)
  {
    if (r.contains(p, slack))
    {
      std::ostringstream msg;
      msg << "derive_poles: pole (" << p.real() << ", " << p.imag()
          << ") lies in the rectangle";
      throw Error(msg.str());
    }
  }
  return fit.poles;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial)
{
  const auto mix = [](std::uint64_t x)
  {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  };
  return mix(mix(seed) ^ static_cast<std::uint64_t>(trial));
}

TrialRecord run_trial(const ExperimentConfig &cfg, const std::vector<Complex> &poles,
                      std::size_t trial, FigureData *figure)
{
  const auto start = std::chrono::steady_clock::now();
  const auto n = static_cast<Eigen::Index>(cfg.n);
  const auto &rect = cfg.rectangle;
  TrialRng rng(trial_seed(cfg.seed, trial));
  const auto unit_box = [&rng]
  {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    return Complex(re, im);
  };

  ComplexVector nu(n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    const double re = rng.uniform(rect.re_min, rect.re_max);
    const double im = rng.uniform(rect.im_min, rect.im_max);
    nu(i) = Complex(re, im);
  }

  TrialRecord rec;
  rec.trial = trial;
  ComplexMatrix S(n, n);
  Eigen::PartialPivLU<ComplexMatrix> lu;
  for (;;)
  {
    for (Eigen::Index i = 0; i < n; i++)
    {
      for (Eigen::Index j = 0; j < n; j++)
      {
        S(i, j) = unit_box();
      }
    }
    lu.compute(S);
    if (lu_rcond(lu) > 1.0 / kMaxConditionS)
    {
      break;
    }
    if (++rec.redraws > kMaxRedraws)
    {
      throw Error("run_trial: eigenvector matrix ill-conditioned after redraws");
    }
  }

  ComplexVector b(n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    b(i) = unit_box();
  }
  b /= b.norm();

  ComplexMatrix S_inv = lu.inverse();
  ComplexMatrix A = S * nu.asDiagonal() * S_inv;
  EigenFactorization fac(std::move(S), nu, std::move(S_inv));

  PoleSpec spec;
  spec.kappa0 = 1;
  for (const Complex p : poles)
  {
    spec.poles.push_back({p, 1, 0});
  }
  const ComplexMatrix V = cfg.full_basis ? ComplexMatrix::Identity(n, n)
                                         : build_krylov_basis(A, b, spec, Side::One).V;
  const ReducedModel model = reduce(A, b, std::nullopt, V, spec, Side::One);
  rec.n_hat = model.order();

  rec.e0 = (vector_impulse_exact(fac, b, cfg.t) - impulse_reduced_vector(model, cfg.t)).norm();

  ArnoldiBoundOptions opts;
  opts.t = cfg.t;
  opts.n_s = cfg.s_samples;
  opts.n_mu = cfg.mu_samples;
  opts.route = CoreRoute::Diagonal;
  const DiagonalizedMatrix M(std::move(A), std::move(fac));
  const BoundResult bound = arnoldi_error_bound(model, M, b, std::nullopt, opts);
  rec.e1 = bound.value;
  rec.ratio = rec.e0 > 0.0 ? rec.e1 / rec.e0 : std::numeric_limits<double>::quiet_NaN();
  rec.argmax_s = bound.argmax_s;
  rec.argmax_mu = bound.argmax_mu;

  if (figure)
  {
    const BoundQuery q = arnoldi_bound_query(model, opts);
    figure->nodes = boundary_nodes(cfg);
    figure->poles = poles;
    figure->spectrum_A.assign(nu.data(), nu.data() + nu.size());
    const ComplexVector &ev = model.ahat_fac.eigenvalues();
    figure->spectrum_Ahat.assign(ev.data(), ev.data() + ev.size());
    figure->hull = q.hull.vertices();
    figure->mu = q.mu_samples;
  }
  rec.seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

namespace
{

Stat stat_of(const std::vector<double> &x)
{
  Stat s;
  s.count = x.size();
  if (x.empty())
  {
    s.mean = std::numeric_limits<double>::quiet_NaN();
    s.stddev = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  double sum = 0.0;
  for (const double v : x)
  {
    sum += v;
  }
  s.mean = sum / static_cast<double>(x.size());
  if (x.size() > 1)
  {
    double ss = 0.0;
    for (const double v : x)
    {
      ss += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(ss / static_cast<double>(x.size() - 1));
  }
  return s;
}

}  // namespace

Summary summarize(const std::vector<TrialRecord> &records)
{
  std::vector<double> e0, e1, ratio;
  Summary s;
  for (const auto &r : records)
  {
    e0.push_back(r.e0);
    e1.push_back(r.e1);
    if (std::isfinite(r.ratio))
    {
      ratio.push_back(r.ratio);
    }
    if (r.e1 < r.e0 / 1.05)
    {
      s.bound_violations++;
    }
  }
  s.e0 = stat_of(e0);
  s.e1 = stat_of(e1);
  s.ratio = stat_of(ratio);
  return s;
}

std::size_t experiment_threads(std::size_t trials)
{
  std::size_t n = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("RATMAT_THREADS"))
  {
    char *end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0)
    {
      n = std::min<std::size_t>(n, cap);
    }
  }
  return std::min(n, trials);
}

namespace
{

std::string format_double(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string points_csv(const std::string &header,
                       const std::vector<std::pair<std::string, std::vector<Complex>>> &sets)
{
  std::ostringstream out;
  out << header << "\n";
  for (const auto &[kind, pts] : sets)
  {
    for (const Complex z : pts)
    {
      out << kind << "," << format_double(z.real()) << "," << format_double(z.imag()) << "\n";
    }
  }
  return out.str();
}

Json stat_json(const Stat &s)
{
  const auto num = [](double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); };
  return Json{{"mean", num(s.mean)}, {"std", num(s.stddev)}, {"count", s.count}};
}

void write_outputs(const ExperimentConfig &cfg, const ExperimentResult &res)
{
  const std::filesystem::path dir(cfg.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
  {
    throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  }
  write_text_file(dir / "trials.csv", trials_csv(res.records, cfg.record_timing));

  std::ostringstream poles;
  poles << "index,re,im\n";
  for (std::size_t k = 0; k < res.poles.size(); k++)
  {
    poles << k << "," << format_double(res.poles[k].real()) << ","
          << format_double(res.poles[k].imag()) << "\n";
  }
  write_text_file(dir / "poles.csv", poles.str());

  const auto &f = res.figure;
  write_text_file(dir / "figure.csv",
                  points_csv("kind,re,im", {{"node", f.nodes},
                                            {"pole", f.poles},
                                            {"spectrum_A", f.spectrum_A},
                                            {"spectrum_Ahat", f.spectrum_Ahat},
                                            {"hull", f.hull},
                                            {"mu", f.mu}}));

  Json summary{{"config", config_to_json(cfg)},
               {"e0", stat_json(res.summary.e0)},
               {"e1", stat_json(res.summary.e1)},
               {"ratio", stat_json(res.summary.ratio)},
               {"bound_violations", res.summary.bound_violations},
               {"poles", points_to_json(res.poles)},
               {"wall_seconds", res.wall_seconds}};
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
}

}  // namespace

std::string trials_csv(const std::vector<TrialRecord> &records, bool record_timing)
{
  std::ostringstream out;
  out << "trial,e0,e1,ratio,argmax_s,argmax_mu_re,argmax_mu_im,seconds\n";
  for (const auto &r : records)
  {
    out << r.trial << "," << format_double(r.e0) << "," << format_double(r.e1) << ","
        << format_double(r.ratio) << "," << format_double(r.argmax_s) << ","
        << format_double(r.argmax_mu.real()) << "," << format_double(r.argmax_mu.imag()) << ","
        << format_double(record_timing ? r.seconds : 0.0) << "\n";
  }
  return out.str();
}

ExperimentResult run_experiment(const ExperimentConfig &cfg, bool write)
{
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  ExperimentResult res;
  res.poles = derive_poles(cfg);
  res.records.resize(cfg.trials);

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_trial = cfg.trials;
  const auto worker = [&]
  {
    for (;;)
    {
      const std::size_t k = next.fetch_add(1);
      if (k >= cfg.trials)
      {
        return;
      }
      try
      {
        res.records[k] = run_trial(cfg, res.poles, k, k == 0 ? &res.figure : nullptr);
      }
      catch (...)
      {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (k < first_error_trial)
        {
          first_error_trial = k;
          first_error = std::current_exception();
        }
      }
    }
  };
  const std::size_t threads = experiment_threads(cfg.trials);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < threads; i++)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &th : pool)
  {
    th.join();
  }
  if (first_error)
  {
    std::rethrow_exception(first_error);
  }
  res.summary = summarize(res.records);
  res.wall_seconds =
    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (write)
  {
    write_outputs(cfg, res);
  }
  return res;
}

}  // namespace ratmat
