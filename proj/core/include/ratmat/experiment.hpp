// Copyright ratmat contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ratmat/bounds.hpp"
#include "ratmat/rom.hpp"
#include "ratmat/types.hpp"

namespace ratmat
{

struct Rectangle
{
  double re_min = -1.0;
  double re_max = 0.0;
  double im_min = -std::numbers::pi;
  double im_max = std::numbers::pi;

  [[nodiscard]] bool contains(Complex z, double slack = 0.0) const
  {
    return z.real() >= re_min - slack && z.real() <= re_max + slack &&
           z.imag() >= im_min - slack && z.imag() <= im_max + slack;
  }
};

/// Random-spectrum study: A = S D S^{-1} with eigenvalues uniform in a
/// rectangle, one-sided rational Arnoldi with poles from a rational fit of
/// exp_t on the rectangle boundary, true error e0 against the bound e1.
struct ExperimentConfig
{
  std::size_t n = 256;
  std::size_t trials = 100;
  Rectangle rectangle;
  /// Points on the two vertical sides, half on each, equally spaced.
  std::size_t boundary_nodes = 18;
  std::size_t fit_L = 9;
  std::size_t fit_M = 8;
  std::size_t mu_samples = 50;
  std::size_t s_samples = 11;
  double t = 1.0;
  std::uint64_t seed = 20240601;
  std::string output = "xp_out";
  /// Write per-trial wall time to the CSV (breaks byte-identical reruns).
  bool record_timing = false;
  /// Use V = I instead of the Krylov basis (small n only).
  bool full_basis = false;

  /// Throws Error describing the first invalid field.
  void validate() const;
};

struct TrialRecord
{
  std::size_t trial = 0;
  double e0 = 0.0;
  double e1 = 0.0;
  /// e1 / e0; NaN when e0 == 0.
  double ratio = 0.0;
  double argmax_s = 0.0;
  Complex argmax_mu = 0.0;
  double seconds = 0.0;
  std::size_t n_hat = 0;
  std::size_t redraws = 0;
};

/// Point sets of one trial for plotting.
struct FigureData
{
  std::vector<Complex> nodes;
  std::vector<Complex> poles;
  std::vector<Complex> spectrum_A;
  std::vector<Complex> spectrum_Ahat;
  std::vector<Complex> hull;
  std::vector<Complex> mu;
};

struct Stat
{
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for a single value.
  double stddev = 0.0;
  std::size_t count = 0;
};

struct Summary
{
  Stat e0;
  Stat e1;
  /// Over trials with finite ratio only.
  Stat ratio;
  std::size_t bound_violations = 0;
};

struct ExperimentResult
{
  std::vector<Complex> poles;
  std::vector<TrialRecord> records;
  Summary summary;
  FigureData figure;
  double wall_seconds = 0.0;
};

/// The sample points of the rational fit, right side first, ascending Im.
std::vector<Complex> boundary_nodes(const ExperimentConfig &cfg);

/// Poles of the [L/M] linearized fit of exp_t at the boundary nodes. Throws
/// if a pole lies in the rectangle or fewer than M poles come out.
std::vector<Complex> derive_poles(const ExperimentConfig &cfg);

/// Seed of the stream for one trial (splitmix64 of seed and index).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

/// mt19937_64 with a portable conversion to doubles in [0, 1).
class TrialRng
{
public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}
  /// (x >> 11) * 2^-53.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::mt19937_64 engine_;
};

inline constexpr double kMaxConditionS = 1e8;
inline constexpr std::size_t kMaxRedraws = 10;

/// One trial. Fills `figure` when given.
TrialRecord run_trial(const ExperimentConfig &cfg, const std::vector<Complex> &poles,
                      std::size_t trial, FigureData *figure = nullptr);

Summary summarize(const std::vector<TrialRecord> &records);

/// Worker count: hardware concurrency capped by RATMAT_THREADS and trials.
std::size_t experiment_threads(std::size_t trials);

/// Validates, runs all trials, and (if write is set) writes trials.csv,
/// summary.json, poles.csv and figure.csv into cfg.output.
ExperimentResult run_experiment(const ExperimentConfig &cfg, bool write = true);

/// CSV text of the per-trial records (17 significant digits).
std::string trials_csv(const std::vector<TrialRecord> &records, bool record_timing);

}  // namespace ratmat
