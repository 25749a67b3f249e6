// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/bench.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <iomanip>
#include <sstream>

#include "espira/espira1.hpp"
#include "espira/io.hpp"
#include "espira/kernels.hpp"
#include "espira/linalg.hpp"
#include "espira/spectral.hpp"
#include "espira/prony.hpp"

namespace espira::bench
{

namespace
{

constexpr double kPi = std::numbers::pi;

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

ExponentialSum from_phases(const std::vector<double> &gamma, const std::vector<double> &phase)
{
  std::vector<Term> terms;
  for (std::size_t j = 0; j < gamma.size(); ++j)
  {
    terms.push_back({gamma[j], std::polar(1.0, phase[j])});
  }
  return ExponentialSum(std::move(terms));
}

Stat stat_of(const std::vector<double> &v)
{
  Stat s;
  if (v.empty())
  {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
  }
  s.min = s.max = v.front();
  double sum = 0.0;
  for (double x : v)
  {
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
    sum += x;
  }
  s.average = sum / static_cast<double>(v.size());
  return s;
}

std::string method_list(const std::vector<Method> &methods)
{
  std::string out;
  for (Method m : methods)
  {
    out += (out.empty() ? "" : ",") + to_string(m);
  }
  return out;
}

}  // namespace

// ---- signals -------------------------------------------------------------------------------

std::vector<std::string> preset_names()
{
  return {"example5.1", "example5.2", "example5.3", "example5.4", "example5.5"};
}

ExponentialSum preset_sum(const std::string &name)
{
  if (name == "example5.1")
  {
    const std::vector<Complex> z{{0.9856, -0.1628}, {0.9856, 0.1628}, {0.8976, -0.4305},
                                 {0.8976, 0.4305},  {0.8127, -0.5690}, {0.8127, 0.5690}};
    std::vector<Term> terms;
    for (std::size_t j = 0; j < z.size(); ++j)
    {
      terms.push_back({static_cast<double>(j + 1), z[j]});
    }
    return ExponentialSum(std::move(terms));
  }
  if (name == "example5.2")
  {
    return from_phases({6, 5, 4, 3, 2, 1}, {7e-3, 21e-3, 200e-3, 201e-3, 53e-3, 1000e-3});
  }
  if (name == "example5.3")
  {
    return from_phases({6, 5, 4, 3, 2, 1}, {200e-3, 201e-3, 202e-3, 203e-3, 204e-3, 205e-3});
  }
  if (name == "example5.4" || name == "example5.5")
  {
    // Knots exp(2 pi i k / 1000); the last one is z = 1 exactly.
    std::vector<Term> terms;
    const std::vector<double> gamma{4, 5, 4, 3, 2, 1, 2, 3};
    const std::vector<long long> k{11, 21, 23, 203, 205, 279, 553, 1000};
    for (std::size_t j = 0; j < k.size(); ++j)
    {
      const Complex w = root_of_unity(1000, k[j]);
      terms.push_back({gamma[j], std::conj(w)});
    }
    return ExponentialSum(std::move(terms));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + name + "'");
}

// ---- noise ---------------------------------------------------------------------------------

RVector gen_noise_uniform(Index count, double amplitude, std::uint64_t seed, std::uint64_t stream)
{
  require(amplitude > 0.0, ErrorCode::InvalidArgument, "noise amplitude must be positive");
  auto engine = make_engine(seed, stream);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  RVector out(count);
  for (Index i = 0; i < count; ++i)
  {
    out[i] = dist(engine);
  }
  return out;
}

RVector gen_noise_gaussian(Index count, double sigma, std::uint64_t seed, std::uint64_t stream)
{
  require(sigma > 0.0, ErrorCode::InvalidArgument, "noise sigma must be positive");
  auto engine = make_engine(seed, stream);
  std::normal_distribution<double> dist(0.0, sigma);
  RVector out(count);
  for (Index i = 0; i < count; ++i)
  {
    out[i] = dist(engine);
  }
  return out;
}

NoiseSpec parse_noise(const std::string &text)
{
  if (text.empty() || text == "none")
  {
    return {};
  }
  const auto colon = text.find(':');
  require(colon != std::string::npos, ErrorCode::InvalidArgument,
          "noise must be none, uniform:A or gauss:F");
  const std::string kind = text.substr(0, colon);
  double value = 0.0;
  try
  {
    value = std::stod(text.substr(colon + 1));
  }
  catch (const std::logic_error &)
  {
    throw Error(ErrorCode::InvalidArgument, "bad noise parameter in '" + text + "'");
  }
  require(value > 0.0, ErrorCode::InvalidArgument, "noise parameter must be positive");
  if (kind == "uniform")
  {
    return {NoiseKind::Uniform, value};
  }
  if (kind == "gauss" || kind == "gaussian")
  {
    return {NoiseKind::Gaussian, value};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown noise kind '" + kind + "'");
}

std::string to_string(const NoiseSpec &noise)
{
  std::ostringstream os;
  switch (noise.kind)
  {
    case NoiseKind::None:
      return "none";
    case NoiseKind::Uniform:
      os << "uniform:" << noise.parameter;
      break;
    case NoiseKind::Gaussian:
      os << "gauss:" << noise.parameter;
      break;
  }
  return os.str();
}

double sample_std(const CVector &v)
{
  require(v.size() >= 2, ErrorCode::InvalidArgument, "std needs two values");
  const Complex mean = v.mean();
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i)
  {
    acc += std::norm(v[i] - mean);
  }
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

NoiseReport snr_metrics(const SampleVector &f, const RVector &noise)
{
  require(noise.size() == f.size(), ErrorCode::InvalidArgument, "noise length differs");
  const double sn = sample_std(noise.cast<Complex>());
  require(sn > 0.0, ErrorCode::ZeroNoise, "noise has zero standard deviation");
  const double sf = sample_std(f.values());
  const double fmax = f.values().cwiseAbs().maxCoeff();
  return {20.0 * std::log10(sf / sn), 20.0 * std::log10(fmax / sn)};
}

RVector make_noise(const NoiseSpec &spec, const SampleVector &clean, std::uint64_t seed,
                   std::uint64_t trial)
{
  switch (spec.kind)
  {
    case NoiseKind::None:
      return RVector(0);
    case NoiseKind::Uniform:
      return gen_noise_uniform(clean.size(), spec.parameter, seed, trial);
    case NoiseKind::Gaussian:
      return gen_noise_gaussian(clean.size(), spec.parameter * sample_std(clean.values()), seed,
                                trial);
  }
  return RVector(0);
}

// ---- special functions ---------------------------------------------------------------------

double bessel_j0_miller(double x)
{
  x = std::abs(x);
  require(x <= 400.0, ErrorCode::OutOfRange, "bessel_j0 is limited to |x| <= 400");
  if (x == 0.0)
  {
    return 1.0;
  }
  // Backward recurrence J_{k-1} = (2k/x) J_k - J_{k+1} from far above the turning point,
  // normalized with J_0 + 2 sum J_{2k} = 1.
  int start = 2 * (static_cast<int>(0.6 * x + 20.0 + 3.0 * std::cbrt(x)) + static_cast<int>(x) / 2);
  start += start % 2;
  double jp1 = 0.0, j = 1e-300, norm = 0.0, j0 = 0.0;
  for (int k = start; k >= 1; --k)
  {
    const double jm1 = 2.0 * k / x * j - jp1;
    jp1 = j;
    j = jm1;
    if ((k - 1) % 2 == 0 && k - 1 > 0)
    {
      norm += 2.0 * j;
    }
    if (std::abs(j) > 1e250)
    {
      j *= 1e-250;
      jp1 *= 1e-250;
      norm *= 1e-250;
    }
  }
  j0 = j;
  norm += j0;
  return j0 / norm;
}

double bessel_j0(double x)
{
  x = std::abs(x);
  require(x <= 400.0, ErrorCode::OutOfRange, "bessel_j0 is limited to |x| <= 400");
  if (x <= 8.0)
  {
    // Alternating series; the largest term stays below 1e3, so the sum keeps ~1e-14.
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int k = 1; k < 60; ++k)
    {
      term *= -q / (static_cast<double>(k) * k);
      // Kahan summation.
      const double y = term - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      if (std::abs(term) < 1e-18 * std::abs(sum))
      {
        break;
      }
    }
    return sum;
  }
  if (x < 25.0)
  {
    return bessel_j0_miller(x);
  }
  // Hankel expansion: J_0 = sqrt(2 / (pi x)) (P cos chi - Q sin chi), chi = x - pi/4.
  double p = 0.0, q = 0.0, term = 1.0;
  for (int k = 0; k < 200; ++k)
  {
    if (k > 0)
    {
      const double next = term * -((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
      if (std::abs(next) > std::abs(term))
      {
        break;
      }
      term = next;
    }
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    (k % 2 == 0 ? p : q) += sign * term;
    if (std::abs(term) < 1e-18)
    {
      break;
    }
  }
  const double c = std::cos(x), s = std::sin(x);
  const double cos_chi = (c + s) / std::numbers::sqrt2;
  const double sin_chi = (s - c) / std::numbers::sqrt2;
  return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

double dirichlet(int n, double t)
{
  require(n >= 1, ErrorCode::InvalidArgument, "Dirichlet kernel order must be positive");
  const double r = t - std::round(t);
  if (r == 0.0)
  {
    return 1.0;
  }
  const double m = 2.0 * n + 1.0;
  return std::sin(m * kPi * r) / (m * std::sin(kPi * r));
}

// ---- function approximation ----------------------------------------------------------------

NamedFunction parse_function(const std::string &name)
{
  if (name == "inv1p" || name == "example6.1")
  {
    return NamedFunction::Inv1p;
  }
  if (name == "besselJ0_100pi" || name == "example6.2")
  {
    return NamedFunction::BesselJ0_100pi;
  }
  if (name == "dirichlet50" || name == "example6.3")
  {
    return NamedFunction::Dirichlet50;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function '" + name + "'");
}

std::string to_string(NamedFunction f)
{
  switch (f)
  {
    case NamedFunction::Inv1p:
      return "inv1p";
    case NamedFunction::BesselJ0_100pi:
      return "besselJ0_100pi";
    case NamedFunction::Dirichlet50:
      return "dirichlet50";
  }
  return "unknown";
}

double evaluate_function(NamedFunction f, double t)
{
  switch (f)
  {
    case NamedFunction::Inv1p:
      return 1.0 / (1.0 + t);
    case NamedFunction::BesselJ0_100pi:
      return bessel_j0(100.0 * kPi * t);
    case NamedFunction::Dirichlet50:
      return dirichlet(50, t);
  }
  return 0.0;
}

Complex evaluate_rescaled(const ApproxResult &fit, double t)
{
  Complex acc(0.0);
  for (std::size_t j = 0; j < fit.gamma.size(); ++j)
  {
    acc += fit.gamma[j] * std::exp(fit.phi[j] * t);
  }
  return acc;
}

double envelope(const std::vector<Complex> &gamma, const std::vector<Complex> &phi, double t)
{
  double acc = 0.0;
  for (std::size_t j = 0; j < gamma.size(); ++j)
  {
    acc += std::abs(gamma[j]) * std::exp(phi[j].real() * t);
  }
  return acc;
}

ApproxResult approx_function(NamedFunction name, Index n_half, Index order_M,
                             const ApproxOptions &options)
{
  require(order_M >= 1 && order_M < n_half, ErrorCode::InvalidArgument,
          "order must satisfy 1 <= M < N");
  const Index n2 = 2 * n_half;
  CVector values(n2);
  for (Index l = 0; l < n2; ++l)
  {
    values[l] = evaluate_function(name, static_cast<double>(l) / static_cast<double>(n2));
  }
  const SampleVector f(values);

  ExperimentSpec spec;
  spec.n_half = n_half;
  spec.tol = options.tol;
  spec.eps = options.eps;
  spec.L = options.L;
  spec.known_order = order_M;
  spec.coefficients = options.coefficients;
  spec.support = options.support > 0 ? options.support : order_M;

  ApproxResult out;
  out.recovery = recover_with(options.method, f, spec);
  {
    std::vector<Complex> z = out.recovery.estimate.knots();
    out.vandermonde_condition = condition_number(
        vandermonde(Eigen::Map<const CVector>(z.data(), static_cast<Index>(z.size())), n2));
  }
  for (const auto &term : out.recovery.estimate.terms())
  {
    out.gamma.push_back(term.gamma);
    out.phi.push_back(static_cast<double>(n2) * std::log(term.z));
  }
  const Index count = static_cast<Index>(std::llround(1.0 / options.grid_step)) + 1;
  std::vector<Term> rescaled;
  for (std::size_t j = 0; j < out.gamma.size(); ++j)
  {
    rescaled.push_back({out.gamma[j], std::exp(out.phi[j] * options.grid_step)});
  }
  // Grid in units of grid_step so the blocked evaluator advances by whole steps.
  const CVector approx = kernels::evaluate_grid(rescaled, 0.0, 1.0, count);
  for (Index i = 0; i < count; ++i)
  {
    const double t = static_cast<double>(i) * options.grid_step;
    out.max_error = std::max(out.max_error, std::abs(evaluate_function(name, t) - approx[i]));
  }
  const SampleVector resampled = sample(out.recovery.estimate, n_half);
  out.max_sample_error = (resampled.values() - values).cwiseAbs().maxCoeff();
  return out;
}

// ---- experiments ---------------------------------------------------------------------------

const MethodSummary &ExperimentTable::summary(Method m) const
{
  for (const auto &s : methods)
  {
    if (s.method == m)
    {
      return s;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "method not part of this experiment");
}

Stat ExperimentTable::mean_noise() const
{
  std::vector<double> v;
  for (const auto &n : noise)
  {
    v.push_back(n.snr_db);
  }
  return stat_of(v);
}

Stat ExperimentTable::mean_psnr() const
{
  std::vector<double> v;
  for (const auto &n : noise)
  {
    v.push_back(n.psnr_db);
  }
  return stat_of(v);
}

RecoveryResult recover_with(Method method, const SampleVector &f, const ExperimentSpec &spec)
{
  switch (method)
  {
    case Method::Espira1:
    {
      Espira1Options o;
      o.tol = spec.tol;
      if (spec.known_order)
      {
        o.fixed_order = *spec.known_order;
      }
      return espira1_recover(f, o);
    }
    case Method::Espira2:
    {
      Espira2Options o;
      o.tol = spec.tol;
      o.known_order = spec.known_order;
      o.coefficients = spec.coefficients;
      o.support = spec.support;
      return espira2_recover(f, o);
    }
    case Method::Mpm:
    {
      PronyOptions o;
      o.L = spec.L;
      o.eps = spec.eps;
      o.known_order = spec.known_order;
      o.precondition = spec.mpm_precondition;
      return mpm_recover(f, o);
    }
    case Method::Esprit:
    {
      PronyOptions o;
      o.L = spec.L;
      o.eps = spec.eps;
      o.known_order = spec.known_order;
      return esprit_recover(f, o);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method");
}

ExperimentTable run_experiment(const ExperimentSpec &spec)
{
  require(spec.trials >= 1, ErrorCode::InvalidArgument, "need at least one trial");
  require(!spec.methods.empty(), ErrorCode::InvalidArgument, "need at least one method");
  const SampleVector clean = sample(spec.signal, spec.n_half);
  const bool noisy = spec.noise.kind != NoiseKind::None;
  const int trials = noisy ? spec.trials : 1;

  ExperimentTable table;
  table.spec = spec;
  table.noise.resize(noisy ? trials : 0);
  table.methods.resize(spec.methods.size());
  for (std::size_t m = 0; m < spec.methods.size(); ++m)
  {
    table.methods[m].method = spec.methods[m];
    table.methods[m].trials.resize(trials);
  }

#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (int t = 0; t < trials; ++t)
  {
    SampleVector data = clean;
    if (noisy)
    {
      const RVector noise = make_noise(spec.noise, clean, spec.seed, static_cast<std::uint64_t>(t));
      table.noise[t] = snr_metrics(clean, noise);
      data = SampleVector(clean.values() + noise.cast<Complex>());
    }
    for (std::size_t m = 0; m < spec.methods.size(); ++m)
    {
      TrialRecord &rec = table.methods[m].trials[t];
      const auto start = std::chrono::steady_clock::now();
      try
      {
        const RecoveryResult r = recover_with(spec.methods[m], data, spec);
        rec.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rec.recovered_order = r.estimate.order();
        rec.errors = match_and_errors(spec.signal, r.estimate, spec.n_half);
        rec.ok = true;
      }
      catch (const std::exception &e)
      {
        rec.ok = false;
        rec.error = e.what();
        rec.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
    }
  }

  for (auto &summary : table.methods)
  {
    std::map<std::string, std::vector<double>> columns;
    for (const auto &rec : summary.trials)
    {
      columns["seconds"].push_back(rec.seconds);
      if (!rec.ok)
      {
        ++summary.failures;
        continue;
      }
      columns["e_f"].push_back(rec.errors.e_f);
      columns["e_z"].push_back(rec.errors.e_z);
      columns["e_re_z"].push_back(rec.errors.e_re_z);
      columns["e_im_z"].push_back(rec.errors.e_im_z);
      columns["e_phi"].push_back(rec.errors.e_phi);
      columns["e_gamma"].push_back(rec.errors.e_gamma);
    }
    for (const char *key : {"e_f", "e_z", "e_re_z", "e_im_z", "e_phi", "e_gamma", "seconds"})
    {
      summary.stats[key] = stat_of(columns[key]);
    }
  }
  return table;
}

ExperimentSpec preset_experiment(const std::string &name, std::optional<Index> n_half)
{
  ExperimentSpec spec;
  spec.name = name;
  spec.signal = preset_sum(name);
  if (name == "example5.1" || name == "example5.2")
  {
    spec.n_half = 30;
  }
  else if (name == "example5.3")
  {
    spec.n_half = 500;
  }
  else
  {
    spec.n_half = name == "example5.4" ? 600 : 800;
    spec.methods = {Method::Espira2, Method::Mpm};
    spec.known_order = 8;
    spec.trials = 10;
    spec.noise = name == "example5.4" ? NoiseSpec{NoiseKind::Uniform, 10.0}
                                      : NoiseSpec{NoiseKind::Gaussian, 0.5};
  }
  if (n_half)
  {
    spec.n_half = *n_half;
  }
  return spec;
}

std::string table_csv(const ExperimentTable &table)
{
  std::ostringstream os;
  os << std::setprecision(6) << std::scientific;
  os << "method,statistic,e_f,e_z,e_re_z,e_im_z,e_phi,e_gamma,seconds,failures\n";
  for (const auto &s : table.methods)
  {
    for (const char *stat : {"min", "max", "average"})
    {
      os << to_string(s.method) << ',' << stat;
      for (const char *key : {"e_f", "e_z", "e_re_z", "e_im_z", "e_phi", "e_gamma", "seconds"})
      {
        const Stat &v = s.stats.at(key);
        const std::string st(stat);
        os << ',' << (st == "min" ? v.min : st == "max" ? v.max : v.average);
      }
      os << ',' << s.failures << '\n';
    }
  }
  return os.str();
}

namespace
{

nlohmann::json spec_json(const ExperimentSpec &spec)
{
  nlohmann::json j;
  j["name"] = spec.name;
  j["signal"] = io::to_json(spec.signal);
  j["N"] = spec.n_half;
  j["methods"] = method_list(spec.methods);
  j["tol"] = spec.tol;
  j["eps"] = spec.eps;
  j["L"] = spec.L;
  j["M"] = spec.known_order ? nlohmann::json(*spec.known_order) : nlohmann::json(nullptr);
  j["noise"] = to_string(spec.noise);
  j["trials"] = spec.trials;
  j["seed"] = spec.seed;
  j["coefficients"] = spec.coefficients == CoefficientMode::Cauchy ? "cauchy" : "vandermonde";
  j["support"] = spec.support ? nlohmann::json(*spec.support) : nlohmann::json(nullptr);
  j["mpm_precondition"] = spec.mpm_precondition;
  return j;
}

}  // namespace

std::string spec_hash(const ExperimentSpec &spec)
{
  // FNV-1a over the canonical (sorted-key) JSON dump.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : spec_json(spec).dump())
  {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

nlohmann::json manifest(const ExperimentTable &table)
{
  nlohmann::json j = spec_json(table.spec);
  j["spec_hash"] = spec_hash(table.spec);
  j["threads"] = kernels::thread_count();
  nlohmann::json failures = nlohmann::json::object();
  for (const auto &s : table.methods)
  {
    failures[to_string(s.method)] = s.failures;
  }
  j["failures"] = failures;
  return j;
}

}  // namespace espira::bench
