// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file bench.hpp
///
/// Experiment harness: named test signals, seeded noise, SNR bookkeeping, special functions
/// for the approximation problems, and trial loops that aggregate error statistics per method.
///
#ifndef ESPIRA_BENCH_HPP
#define ESPIRA_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "espira/espira2.hpp"
#include "espira/model.hpp"

namespace espira::bench
{

// ---- signals -------------------------------------------------------------------------------

/// Parameter sets of the exact and noisy recovery experiments: "example5.1" ... "example5.5".
ExponentialSum preset_sum(const std::string &name);
std::vector<std::string> preset_names();

// ---- noise ---------------------------------------------------------------------------------

/// i.i.d. uniform on [-amplitude, amplitude]. `stream` separates trials sharing one seed.
RVector gen_noise_uniform(Index count, double amplitude, std::uint64_t seed,
                          std::uint64_t stream = 0);

/// i.i.d. normal(0, sigma^2).
RVector gen_noise_gaussian(Index count, double sigma, std::uint64_t seed,
                           std::uint64_t stream = 0);

enum class NoiseKind
{
  None,
  Uniform,   // parameter: amplitude
  Gaussian   // parameter: sigma as a multiple of std(f)
};

struct NoiseSpec
{
  NoiseKind kind = NoiseKind::None;
  double parameter = 0.0;
};

/// "none", "uniform:A" or "gauss:F".
NoiseSpec parse_noise(const std::string &text);
std::string to_string(const NoiseSpec &noise);

/// Sample standard deviation with the n - 1 normalization, |.| for complex entries.
double sample_std(const CVector &v);

struct NoiseReport
{
  double snr_db = 0.0;   // 20 log10(std f / std noise)
  double psnr_db = 0.0;  // 20 log10(max|f| / std noise)
};

NoiseReport snr_metrics(const SampleVector &f, const RVector &noise);

/// Noise realization of a trial for a given clean signal (empty for NoiseKind::None).
RVector make_noise(const NoiseSpec &spec, const SampleVector &clean, std::uint64_t seed,
                   std::uint64_t trial);

// ---- special functions ---------------------------------------------------------------------

/// J_0(x) for |x| <= 400: power series near the origin, Hankel's asymptotic expansion for
/// large arguments and a normalized backward recurrence in between.
double bessel_j0(double x);

/// J_0 by normalized backward recurrence alone; an independent route for cross-checks.
double bessel_j0_miller(double x);

/// sin((2n+1) pi t) / ((2n+1) sin(pi t)), equal to 1 at integer t.
double dirichlet(int n, double t);

// ---- function approximation ----------------------------------------------------------------

enum class NamedFunction
{
  Inv1p,           // 1 / (1 + t)
  BesselJ0_100pi,  // J_0(100 pi t)
  Dirichlet50      // D_50(t)
};

NamedFunction parse_function(const std::string &name);
std::string to_string(NamedFunction f);
double evaluate_function(NamedFunction f, double t);

struct ApproxOptions
{
  Method method = Method::Espira2;
  CoefficientMode coefficients = CoefficientMode::Vandermonde;
  double tol = 1e-13;
  Index L = 0;         // MPM/ESPRIT window, 0 selects N
  Index support = 0;   // ESPIRA-II greedy steps, 0 selects M
  double eps = 1e-11;  // MPM/ESPRIT rank threshold (unused with a fixed order)
  double grid_step = 1e-4;
};

struct ApproxResult
{
  // f(t) = sum_j gamma_j exp(phi_j t) on [0, 1]
  std::vector<Complex> gamma;
  std::vector<Complex> phi;
  double max_error = 0.0;         // sup over the [0, 1] grid
  double max_sample_error = 0.0;  // max over the samples that were fitted
  // Condition number of the 2N x M Vandermonde matrix of the fitted knots, whichever
  // coefficient system was solved.
  double vandermonde_condition = 0.0;
  RecoveryResult recovery;        // knots in the sample index domain
};

/// Fits an order_M exponential sum to the 2N samples g(l / 2N) and reports the sup error.
ApproxResult approx_function(NamedFunction name, Index n_half, Index order_M,
                             const ApproxOptions &options = {});

/// Evaluates sum_j gamma_j exp(phi_j t).
Complex evaluate_rescaled(const ApproxResult &fit, double t);

/// sum_j |gamma_j| exp(Re(phi_j) t).
double envelope(const std::vector<Complex> &gamma, const std::vector<Complex> &phi, double t);

// ---- experiments ---------------------------------------------------------------------------

struct ExperimentSpec
{
  std::string name = "custom";
  ExponentialSum signal;
  Index n_half = 30;
  std::vector<Method> methods{Method::Espira1, Method::Espira2, Method::Mpm, Method::Esprit};
  double tol = 1e-13;  // ESPIRA
  double eps = 1e-10;  // MPM / ESPRIT
  Index L = 0;         // 0 selects N
  std::optional<Index> known_order;
  NoiseSpec noise;
  int trials = 1;
  std::uint64_t seed = 1;
  CoefficientMode coefficients = CoefficientMode::Vandermonde;
  std::optional<Index> support;  // ESPIRA-II greedy steps with a known order
  bool mpm_precondition = true;
};

struct TrialRecord
{
  bool ok = false;
  std::string error;
  ErrorReport errors;
  Index recovered_order = 0;
  double seconds = 0.0;
};

struct Stat
{
  double min = 0.0;
  double max = 0.0;
  double average = 0.0;
};

struct MethodSummary
{
  Method method;
  std::vector<TrialRecord> trials;
  int failures = 0;
  // Keyed by metric name: e_f, e_z, e_re_z, e_im_z, e_phi, e_gamma, seconds.
  std::map<std::string, Stat> stats;
};

struct ExperimentTable
{
  ExperimentSpec spec;
  std::vector<NoiseReport> noise;  // one per trial (empty when noise-free)
  std::vector<MethodSummary> methods;

  const MethodSummary &summary(Method m) const;
  Stat mean_noise() const;  // min/max/average of SNR
  Stat mean_psnr() const;
};

/// Recovers with one method using the experiment settings.
RecoveryResult recover_with(Method method, const SampleVector &f, const ExperimentSpec &spec);

ExperimentTable run_experiment(const ExperimentSpec &spec);

/// Named experiment: "example5.1" ... "example5.5" with the matching N, noise and order.
ExperimentSpec preset_experiment(const std::string &name, std::optional<Index> n_half = {});

/// One row per method x statistic.
std::string table_csv(const ExperimentTable &table);

/// Seed, spec fields and a stable hash of them, for reproducing a run.
nlohmann::json manifest(const ExperimentTable &table);
std::string spec_hash(const ExperimentSpec &spec);

}  // namespace espira::bench

#endif  // ESPIRA_BENCH_HPP
